//! Hand-assembled pcap bytes. Every offset below follows the radiotap and
//! 802.11 layouts directly, so the expected records are known by construction.

#![allow(dead_code)]

pub const CAMERA: [u8; 6] = [0x00, 0x12, 0x34, 0x56, 0x78, 0x9a];
pub const AP: [u8; 6] = [0x00, 0xaa, 0xbb, 0xcc, 0xdd, 0xee];
pub const GATEWAY: [u8; 6] = [0x00, 0x11, 0x22, 0x33, 0x44, 0x55];

pub fn global_header(big_endian: bool) -> Vec<u8> {
    let mut h = Vec::new();
    let w32 = |h: &mut Vec<u8>, v: u32| {
        h.extend_from_slice(&if big_endian { v.to_be_bytes() } else { v.to_le_bytes() })
    };
    w32(&mut h, 0xa1b2c3d4);
    h.extend_from_slice(&if big_endian { 2u16.to_be_bytes() } else { 2u16.to_le_bytes() });
    h.extend_from_slice(&if big_endian { 4u16.to_be_bytes() } else { 4u16.to_le_bytes() });
    w32(&mut h, 0); // thiszone
    w32(&mut h, 0); // sigfigs
    w32(&mut h, 65535); // snaplen
    w32(&mut h, 127); // radiotap
    h
}

pub fn record(big_endian: bool, sec: u32, usec: u32, pkt: &[u8]) -> Vec<u8> {
    let mut r = Vec::new();
    for v in [sec, usec, pkt.len() as u32, pkt.len() as u32] {
        r.extend_from_slice(&if big_endian { v.to_be_bytes() } else { v.to_le_bytes() });
    }
    r.extend_from_slice(pkt);
    r
}

/// Radiotap: flags (FCS present), channel 2437 MHz, dBm signal -55.
///   0: version 0, pad, len 15
///   4: present = flags | channel | dBm signal = 0x2a
///   8: flags 0x10
///   9: pad (channel aligns to 2)
///  10: freq 0x0985, channel flags 0x00a0
///  14: dBm signal 0xc9
pub fn radiotap_basic() -> Vec<u8> {
    vec![0x00, 0x00, 0x0f, 0x00, 0x2a, 0x00, 0x00, 0x00, 0x10, 0x00, 0x85, 0x09, 0xa0, 0x00, 0xc9]
}

/// Same fields plus TSFT after a two-word presence bitmap, so both the
/// TSFT (8-byte) and channel (2-byte) fields need padding. Pad bytes are
/// 0xee so a parser that ignores alignment reads garbage.
///   4: present word 0 = TSFT | flags | channel | dBm | ext = 0x8000_002b
///   8: present word 1 = 0
///  12: 4 pad bytes
///  16: TSFT
///  24: flags 0x10
///  25: pad
///  26: freq 2437, channel flags
///  30: dBm signal -55
pub fn radiotap_padded() -> Vec<u8> {
    let mut r = vec![0x00, 0x00, 31, 0x00, 0x2b, 0x00, 0x00, 0x80, 0, 0, 0, 0];
    r.extend_from_slice(&[0xee; 4]);
    r.extend_from_slice(&0x0102_0304_0506_0708u64.to_le_bytes());
    r.push(0x10);
    r.push(0xee);
    r.extend_from_slice(&[0x85, 0x09, 0xa0, 0x00]);
    r.push(0xc9);
    assert_eq!(r.len(), 31);
    r
}

/// QoS data, ToDS: addr1 = BSSID, addr2 = SA, addr3 = DA, then seq and QoS control.
pub fn qos_data_header() -> Vec<u8> {
    let mut h = vec![0x88, 0x01, 0x00, 0x00];
    h.extend_from_slice(&AP);
    h.extend_from_slice(&CAMERA);
    h.extend_from_slice(&GATEWAY);
    h.extend_from_slice(&[0x10, 0x00, 0x00, 0x00]);
    assert_eq!(h.len(), 26);
    h
}

/// Radiotap + QoS data header + 800 payload bytes + 4 FCS bytes.
pub fn golden_packet(radiotap: Vec<u8>) -> Vec<u8> {
    let mut p = radiotap;
    p.extend(qos_data_header());
    p.extend((0..800).map(|i| (i * 7 % 251) as u8));
    p.extend_from_slice(&[0xde, 0xad, 0xbe, 0xef]);
    p
}

pub fn golden_pcap(big_endian: bool) -> Vec<u8> {
    let mut f = global_header(big_endian);
    f.extend(record(big_endian, 1_700_000_000, 250_000, &golden_packet(radiotap_basic())));
    f
}
