//! Classic pcap with radiotap (link type 127) carrying 802.11 frames.

use crate::record::{channel_from_freq, CaptureSession, FrameRecord, FrameType, MacAddr};
use crate::CaptureError;

pub const LINKTYPE_IEEE802_11_RADIOTAP: u32 = 127;
const GLOBAL_HEADER_LEN: usize = 24;
const RECORD_HEADER_LEN: usize = 16;

const RT_FLAGS: u32 = 1;
const RT_CHANNEL: u32 = 3;
const RT_DBM_ANTSIGNAL: u32 = 5;
const RT_FLAG_FCS: u8 = 0x10;

// (alignment, size) of radiotap fields 0..=27 in the default namespace.
const RT_FIELDS: [(usize, usize); 28] = [
    (8, 8),  // 0 TSFT
    (1, 1),  // 1 flags
    (1, 1),  // 2 rate
    (2, 4),  // 3 channel: u16 freq, u16 flags
    (2, 2),  // 4 FHSS
    (1, 1),  // 5 dBm antenna signal
    (1, 1),  // 6 dBm antenna noise
    (2, 2),  // 7 lock quality
    (2, 2),  // 8 TX attenuation
    (2, 2),  // 9 dB TX attenuation
    (1, 1),  // 10 dBm TX power
    (1, 1),  // 11 antenna
    (1, 1),  // 12 dB antenna signal
    (1, 1),  // 13 dB antenna noise
    (2, 2),  // 14 RX flags
    (2, 2),  // 15 TX flags
    (1, 1),  // 16 RTS retries
    (1, 1),  // 17 data retries
    (4, 8),  // 18 XChannel
    (1, 3),  // 19 MCS
    (4, 8),  // 20 A-MPDU status
    (2, 12), // 21 VHT
    (8, 12), // 22 timestamp
    (2, 12), // 23 HE
    (2, 12), // 24 HE-MU
    (2, 6),  // 25 HE-MU-other-user
    (1, 1),  // 26 0-length PSDU
    (2, 4),  // 27 L-SIG
];

#[derive(Clone, Copy)]
enum Endian {
    Little,
    Big,
}

fn u16_at(b: &[u8], off: usize, e: Endian) -> Option<u16> {
    let s: [u8; 2] = b.get(off..off + 2)?.try_into().ok()?;
    Some(match e {
        Endian::Little => u16::from_le_bytes(s),
        Endian::Big => u16::from_be_bytes(s),
    })
}

fn u32_at(b: &[u8], off: usize, e: Endian) -> Option<u32> {
    let s: [u8; 4] = b.get(off..off + 4)?.try_into().ok()?;
    Some(match e {
        Endian::Little => u32::from_le_bytes(s),
        Endian::Big => u32::from_be_bytes(s),
    })
}

/// Fields pulled out of a radiotap header.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RadiotapInfo {
    pub length: usize,
    pub flags: Option<u8>,
    pub freq_mhz: Option<u16>,
    pub dbm_signal: Option<i8>,
}

impl RadiotapInfo {
    pub fn has_fcs(&self) -> bool {
        self.flags.is_some_and(|f| f & RT_FLAG_FCS != 0)
    }
}

/// Parse the radiotap header at the start of `pkt`. `None` if it is malformed.
pub fn parse_radiotap(pkt: &[u8]) -> Option<RadiotapInfo> {
    if *pkt.first()? != 0 {
        return None;
    }
    let length = u16_at(pkt, 2, Endian::Little)? as usize;
    if length < 8 || length > pkt.len() {
        return None;
    }
    let hdr = &pkt[..length];
    let present = u32_at(hdr, 4, Endian::Little)?;
    // Skip any chained presence words; only the first word's fields are used.
    let mut off = 8;
    let mut word = present;
    while word & 0x8000_0000 != 0 {
        word = u32_at(hdr, off, Endian::Little)?;
        off += 4;
    }
    let mut info = RadiotapInfo { length, ..Default::default() };
    for bit in 0..29u32 {
        if present & (1 << bit) == 0 {
            continue;
        }
        let Some(&(align, size)) = RT_FIELDS.get(bit as usize) else {
            // Unknown size: nothing after it can be located.
            break;
        };
        off = off.div_ceil(align) * align;
        let field = match hdr.get(off..off + size) {
            Some(f) => f,
            None => break,
        };
        match bit {
            RT_FLAGS => info.flags = Some(field[0]),
            RT_CHANNEL => info.freq_mhz = u16_at(field, 0, Endian::Little),
            RT_DBM_ANTSIGNAL => info.dbm_signal = Some(field[0] as i8),
            _ => {}
        }
        off += size;
    }
    Some(info)
}

/// MAC-header facts needed for a [`FrameRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MacHeader {
    pub frame_type: FrameType,
    pub subtype: u8,
    pub src: MacAddr,
    pub dst: MacAddr,
    pub bssid: Option<MacAddr>,
    pub header_len: usize,
}

/// Parse the 802.11 MAC header. `None` when the frame is too short.
pub fn parse_mac_header(f: &[u8]) -> Option<MacHeader> {
    let fc0 = *f.first()?;
    let fc1 = *f.get(1)?;
    if fc0 & 0x03 != 0 {
        return None; // protocol version must be 0
    }
    let frame_type = FrameType::from_bits((fc0 >> 2) & 0x03)?;
    let subtype = fc0 >> 4;
    let to_ds = fc1 & 0x01 != 0;
    let from_ds = fc1 & 0x02 != 0;
    let order = fc1 & 0x80 != 0;
    let addr = |i: usize| f.get(i..i + 6).map(MacAddr::from_slice);

    if frame_type == FrameType::Control {
        // RA always; TA on the longer control frames.
        let ra = addr(4)?;
        let ta = addr(10);
        return Some(MacHeader {
            frame_type,
            subtype,
            src: ta.unwrap_or(MacAddr::ZERO),
            dst: ra,
            bssid: None,
            header_len: if ta.is_some() { 16 } else { 10 },
        });
    }

    let (a1, a2, a3) = (addr(4)?, addr(10)?, addr(16)?);
    let mut header_len = 24;
    let (src, dst, bssid) = match (to_ds, from_ds) {
        (false, false) => (a2, a1, Some(a3)),
        (true, false) => (a2, a3, Some(a1)),
        (false, true) => (a3, a1, Some(a2)),
        (true, true) => {
            header_len += 6;
            (addr(24)?, a3, None)
        }
    };
    let qos = frame_type == FrameType::Data && subtype & 0x08 != 0;
    if qos {
        header_len += 2;
    }
    // +HTC: the order bit on QoS data and on management frames adds 4 bytes.
    if order && (qos || frame_type == FrameType::Management) {
        header_len += 4;
    }
    if f.len() < header_len {
        return None;
    }
    Some(MacHeader { frame_type, subtype, src, dst, bssid, header_len })
}

/// Parse a classic pcap byte stream.
///
/// Packets whose headers do not fit are counted in `skipped`; a record
/// header that claims more bytes than remain ends the parse the same way.
pub fn parse_pcap(bytes: &[u8]) -> Result<CaptureSession, CaptureError> {
    parse_pcap_named(bytes, "<memory>")
}

pub fn parse_pcap_named(bytes: &[u8], source: &str) -> Result<CaptureSession, CaptureError> {
    if bytes.len() < GLOBAL_HEADER_LEN {
        return Err(CaptureError::Format("file shorter than the pcap global header".into()));
    }
    let magic = [bytes[0], bytes[1], bytes[2], bytes[3]];
    let (endian, nanos) = match magic {
        [0xd4, 0xc3, 0xb2, 0xa1] => (Endian::Little, false),
        [0xa1, 0xb2, 0xc3, 0xd4] => (Endian::Big, false),
        [0x4d, 0x3c, 0xb2, 0xa1] => (Endian::Little, true),
        [0xa1, 0xb2, 0x3c, 0x4d] => (Endian::Big, true),
        _ => return Err(CaptureError::Format(format!("bad pcap magic {magic:02x?}"))),
    };
    let linktype = u32_at(bytes, 20, endian).unwrap_or(0) & 0x0fff_ffff;
    if linktype != LINKTYPE_IEEE802_11_RADIOTAP {
        return Err(CaptureError::Format(format!("link type {linktype}, expected 127 (radiotap)")));
    }

    let mut records = Vec::new();
    let mut skipped = 0;
    let mut off = GLOBAL_HEADER_LEN;
    while off < bytes.len() {
        let (Some(sec), Some(frac), Some(incl)) = (
            u32_at(bytes, off, endian),
            u32_at(bytes, off + 4, endian),
            u32_at(bytes, off + 8, endian),
        ) else {
            skipped += 1;
            break;
        };
        let start = off + RECORD_HEADER_LEN;
        let Some(end) = start.checked_add(incl as usize).filter(|&e| e <= bytes.len()) else {
            skipped += 1;
            break;
        };
        off = end;
        let micros = if nanos { frac as u64 / 1000 } else { frac as u64 };
        let timestamp_us = sec as u64 * 1_000_000 + micros;
        match parse_packet(&bytes[start..end], timestamp_us) {
            Some(r) => records.push(r),
            None => skipped += 1,
        }
    }
    Ok(CaptureSession::from_records(records, source, skipped))
}

fn parse_packet(pkt: &[u8], timestamp_us: u64) -> Option<FrameRecord> {
    let rt = parse_radiotap(pkt)?;
    let frame = &pkt[rt.length..];
    let mac = parse_mac_header(frame)?;
    let fcs = if rt.has_fcs() { 4 } else { 0 };
    let payload = frame.len().checked_sub(mac.header_len + fcs)?;
    Some(FrameRecord {
        timestamp_us,
        src_mac: mac.src,
        dst_mac: mac.dst,
        bssid: mac.bssid,
        frame_type: mac.frame_type,
        subtype: mac.subtype,
        payload_len: u32::try_from(payload).ok()?,
        rssi_dbm: rt.dbm_signal.map(i32::from),
        channel: rt.freq_mhz.and_then(channel_from_freq),
    })
}
