use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// 48-bit IEEE MAC address.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MacAddr(pub [u8; 6]);

impl MacAddr {
    pub const ZERO: MacAddr = MacAddr([0; 6]);

    pub fn oui(&self) -> [u8; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    /// U/L bit of the first octet; set on randomized addresses.
    pub fn is_locally_administered(&self) -> bool {
        self.0[0] & 0x02 != 0
    }

    pub fn is_multicast(&self) -> bool {
        self.0[0] & 0x01 != 0
    }

    pub(crate) fn from_slice(b: &[u8]) -> MacAddr {
        let mut a = [0u8; 6];
        a.copy_from_slice(&b[..6]);
        MacAddr(a)
    }
}

impl fmt::Display for MacAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.0;
        write!(f, "{:02x}:{:02x}:{:02x}:{:02x}:{:02x}:{:02x}", b[0], b[1], b[2], b[3], b[4], b[5])
    }
}

impl FromStr for MacAddr {
    type Err = String;

    /// Accepts `aa:bb:cc:dd:ee:ff` or `aa-bb-cc-dd-ee-ff`, any case.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split([':', '-']).collect();
        if parts.len() != 6 {
            return Err(format!("bad MAC address {s:?}"));
        }
        let mut a = [0u8; 6];
        for (o, p) in a.iter_mut().zip(parts) {
            if p.len() != 2 {
                return Err(format!("bad MAC address {s:?}"));
            }
            *o = u8::from_str_radix(p, 16).map_err(|_| format!("bad MAC address {s:?}"))?;
        }
        Ok(MacAddr(a))
    }
}

impl Serialize for MacAddr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MacAddr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrameType {
    #[serde(rename = "mgmt")]
    Management,
    #[serde(rename = "ctrl")]
    Control,
    #[serde(rename = "data")]
    Data,
}

impl FrameType {
    pub fn from_bits(t: u8) -> Option<FrameType> {
        match t {
            0 => Some(FrameType::Management),
            1 => Some(FrameType::Control),
            2 => Some(FrameType::Data),
            _ => None,
        }
    }
}

pub const SUBTYPE_PROBE_RESPONSE: u8 = 5;
pub const SUBTYPE_BEACON: u8 = 8;
pub const SUBTYPE_QOS_DATA: u8 = 8;

/// One sniffed 802.11 frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameRecord {
    pub timestamp_us: u64,
    pub src_mac: MacAddr,
    pub dst_mac: MacAddr,
    pub bssid: Option<MacAddr>,
    pub frame_type: FrameType,
    pub subtype: u8,
    /// MAC payload after headers, before FCS.
    pub payload_len: u32,
    pub rssi_dbm: Option<i32>,
    pub channel: Option<u16>,
}

impl FrameRecord {
    /// Beacon or probe response, i.e. a frame that only an AP sends.
    pub fn is_ap_announcement(&self) -> bool {
        self.frame_type == FrameType::Management
            && (self.subtype == SUBTYPE_BEACON || self.subtype == SUBTYPE_PROBE_RESPONSE)
    }
}

/// An ordered capture.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CaptureSession {
    pub records: Vec<FrameRecord>,
    pub source: String,
    pub duration_s: f64,
    /// Packets dropped because they ended before their headers did.
    pub skipped: usize,
}

impl CaptureSession {
    /// Sorts by timestamp (stable) and derives the duration.
    pub fn from_records(mut records: Vec<FrameRecord>, source: impl Into<String>, skipped: usize) -> Self {
        records.sort_by_key(|r| r.timestamp_us);
        let duration_s = match (records.first(), records.last()) {
            (Some(a), Some(b)) => (b.timestamp_us - a.timestamp_us) as f64 / 1e6,
            _ => 0.0,
        };
        Self { records, source: source.into(), duration_s, skipped }
    }

    pub fn start_us(&self) -> Option<u64> {
        self.records.first().map(|r| r.timestamp_us)
    }
}

/// Channel number for a centre frequency in MHz (2.4 and 5 GHz bands).
pub fn channel_from_freq(mhz: u16) -> Option<u16> {
    match mhz {
        2484 => Some(14),
        2412..=2472 if (mhz - 2407) % 5 == 0 => Some((mhz - 2407) / 5),
        5000..=5895 if mhz % 5 == 0 => Some((mhz - 5000) / 5),
        _ => None,
    }
}
