/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
pub(crate) fn fnv1a_hex(bytes: &[u8]) -> alloc::string::String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    alloc::format!("{hash:016x}")
}
