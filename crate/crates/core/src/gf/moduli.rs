//! Built-in primitive moduli, written as coefficient digits from degree m
//! down to degree 0.

const P2: [&str; 10] = [
    "11",
    "111",
    "1011",
    "10011",
    "100101",
    "1000011",
    "10000011",
    "100011101",
    "1000010001",
    "10000001001",
];
const P3: [&str; 10] = [
    "11",
    "112",
    "1021",
    "10012",
    "100021",
    "1000012",
    "10000121",
    "100001002",
    "1000002101",
    "10000001012",
];
const P5: [&str; 10] = [
    "12",
    "112",
    "1032",
    "10122",
    "100042",
    "1000012",
    "10000032",
    "100000123",
    "1000000123",
    "10000000113",
];
const P7: [&str; 10] = [
    "12",
    "113",
    "1032",
    "10135",
    "100014",
    "1000315",
    "10000062",
    "100000013",
    "1000000112",
    "10000000515",
];

/// Default modulus for GF(p^m), p in {2,3,5,7}, 1 <= m <= 10.
///
/// Each entry is the primitive polynomial with the smallest low-order
/// coefficient vector; for p = 2 this yields x^4+x+1 and x^5+x^2+1.
pub fn default_modulus(p: u32, m: u32) -> Option<&'static str> {
    let table = match p {
        2 => &P2,
        3 => &P3,
        5 => &P5,
        7 => &P7,
        _ => return None,
    };
    if m == 0 || m > 10 {
        return None;
    }
    Some(table[m as usize - 1])
}
