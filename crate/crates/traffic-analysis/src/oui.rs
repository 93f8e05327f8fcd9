use capture_ingest::MacAddr;
use std::collections::HashMap;

pub const UNKNOWN_VENDOR: &str = "unknown";
pub const RANDOMIZED_VENDOR: &str = "unknown (randomized?)";

/// 24-bit OUI prefix to vendor name.
#[derive(Debug, Clone, Default)]
pub struct OuiTable {
    map: HashMap<[u8; 3], String>,
}

fn parse_prefix(s: &str) -> Option<[u8; 3]> {
    let hex: String = s.chars().filter(|c| !matches!(c, ':' | '-' | '.')).collect();
    if hex.len() != 6 {
        return None;
    }
    let mut out = [0u8; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = u8::from_str_radix(hex.get(2 * i..2 * i + 2)?, 16).ok()?;
    }
    Some(out)
}

impl OuiTable {
    /// Parse `prefix<TAB>vendor` lines. Blank lines and `#` comments are
    /// ignored; malformed lines are skipped and reported as warnings.
    pub fn parse(text: &str) -> (OuiTable, Vec<String>) {
        let mut map = HashMap::new();
        let mut warnings = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let parsed = line
                .split_once('\t')
                .and_then(|(p, v)| Some((parse_prefix(p.trim())?, v.trim())))
                .filter(|(_, v)| !v.is_empty());
            match parsed {
                Some((p, v)) => {
                    map.insert(p, v.to_string());
                }
                None => warnings.push(format!("OUI table line {}: skipped malformed entry {t:?}", i + 1)),
            }
        }
        (OuiTable { map }, warnings)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

pub fn oui_lookup(mac: &MacAddr, table: &OuiTable) -> String {
    if mac.is_locally_administered() {
        return RANDOMIZED_VENDOR.to_string();
    }
    table.map.get(&mac.oui()).cloned().unwrap_or_else(|| UNKNOWN_VENDOR.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: &str = "# vendors\n00:12:34\tAcme Cams\n0C-8C-24\tShenzhen Bilian\nzzzz\tBroken\n001A2B\n\nAABBCC\tGlobally Odd\n";

    #[test]
    fn lookup() {
        let (t, warns) = OuiTable::parse(TABLE);
        assert_eq!(t.len(), 3);
        assert_eq!(warns.len(), 2);
        assert_eq!(oui_lookup(&"00:12:34:56:78:9a".parse().unwrap(), &t), "Acme Cams");
        assert_eq!(oui_lookup(&"0c:8c:24:00:00:01".parse().unwrap(), &t), "Shenzhen Bilian");
        assert_eq!(oui_lookup(&"00:99:99:00:00:01".parse().unwrap(), &t), UNKNOWN_VENDOR);
    }

    #[test]
    fn randomized_wins_over_table() {
        // aa has the U/L bit set
        let (t, _) = OuiTable::parse(TABLE);
        assert_eq!(oui_lookup(&"aa:bb:cc:00:00:01".parse().unwrap(), &t), RANDOMIZED_VENDOR);
    }

    #[test]
    fn empty_table() {
        let (t, w) = OuiTable::parse("");
        assert!(t.is_empty() && w.is_empty());
        assert_eq!(oui_lookup(&"00:12:34:56:78:9a".parse().unwrap(), &t), UNKNOWN_VENDOR);
    }
}
