//! Row expressions of every weight-distribution table, evaluated exactly.

use num_rational::Ratio;

use super::TableTag;
use crate::arith::is_prime;
use crate::error::{Error, Result};

pub(super) type Q = Ratio<i128>;

/// Table rows before validation: `(weight, count)` plus length and dimension.
pub(super) struct RawTable {
    pub n: i128,
    pub k: u32,
    pub rows: Vec<(i128, Q)>,
}

fn int(x: i128) -> Q {
    Q::from_integer(x)
}

/// `b^e` for any integer `e`.
fn pw(b: i128, e: i64) -> Q {
    int(b).pow(e as i32)
}

/// `(-1)^e`.
fn sgn(e: i64) -> i128 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn gate(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::GateUnsatisfied(what()))
    }
}

fn binary_gate(tag: TableTag, p: u32, m: u32, odd: bool, min_m: u32) -> Result<()> {
    gate(p == 2, || format!("{tag} is a binary table, got p = {p}"))?;
    let parity = if odd { "odd" } else { "even" };
    gate(m % 2 == u32::from(odd) && m >= min_m, || {
        format!("{tag} needs m {parity} and m >= {min_m}, got m = {m}")
    })
}

fn odd_p_gate(tag: TableTag, p: u32, m: u32, odd: bool, min_m: u32) -> Result<()> {
    gate(p > 2 && is_prime(p as u64), || format!("{tag} needs an odd prime p, got {p}"))?;
    let parity = if odd { "odd" } else { "even" };
    gate(m % 2 == u32::from(odd) && m >= min_m, || {
        format!("{tag} needs m {parity} and m >= {min_m}, got m = {m}")
    })
}

pub(super) fn evaluate(tag: TableTag, p: u32, m: u32, lambda: Option<i64>) -> Result<RawTable> {
    use TableTag::*;
    let mi = m as i64;
    let q = (p as i128).pow(m);
    let two = |e: i64| pw(2, e);
    let pp = |e: i64| pw(p as i128, e);
    let out = |n: i128, k: u32, rows: Vec<(i128, Q)>| Ok(RawTable { n, k, rows });
    match tag {
        Tab1 => {
            binary_gate(tag, p, m, true, 3)?;
            let h = 1i128 << ((m - 1) / 2);
            let c = int(q - 1) * two(mi - 1);
            out(
                q,
                2 * m + 1,
                vec![
                    (0, int(1)),
                    (q / 2 - h, c),
                    (q / 2, int(q - 1) * int(2 * q - q + 2)),
                    (q / 2 + h, c),
                    (q, int(1)),
                ],
            )
        }
        Tab2 => {
            binary_gate(tag, p, m, false, 4)?;
            let h = 1i128 << (m / 2);
            let l = 1i128 << ((m - 2) / 2);
            let c1 = int(q - 1) * two(mi - 2) / int(3);
            let c2 = int(q - 1) * two(mi + 1) / int(3);
            out(
                q,
                2 * m + 1,
                vec![
                    (0, int(1)),
                    (q / 2 - h, c1),
                    (q / 2 - l, c2),
                    (q / 2, int(2 * (q - 1)) * (two(mi - 2) + int(1))),
                    (q / 2 + l, c2),
                    (q / 2 + h, c1),
                    (q, int(1)),
                ],
            )
        }
        Tab3 | Tab4 | Tab5 => {
            binary_gate(tag, p, m, true, 5)?;
            let h = 1i128 << ((m - 1) / 2);
            let (t, lo, mid, hi) = match tag {
                Tab3 => {
                    let base = two((mi - 5) / 2) * int(q - 1);
                    (
                        1,
                        base * (int(2) + two((mi + 1) / 2)),
                        int(-1) + two(mi - 1) + two(2 * mi - 1),
                        base * (int(-2) + two((mi + 1) / 2)),
                    )
                }
                Tab4 => {
                    let base = two((mi - 7) / 2);
                    (
                        2,
                        base * (int(-4) + two(mi + 2) + two((1 + 3 * mi) / 2)),
                        int(-1) + two(2 * mi - 2),
                        base * (int(4) - two(mi + 2) + two((1 + 3 * mi) / 2)),
                    )
                }
                _ => (
                    3,
                    -two((mi - 3) / 2) + int(3) * two((3 * mi - 7) / 2) + two(mi - 3) + two(2 * mi - 4),
                    (int(-1) + two(mi - 2)) * (int(1) + two(mi - 1)),
                    two((mi - 3) / 2) - int(3) * two((3 * mi - 7) / 2) + two(mi - 3) + two(2 * mi - 4),
                ),
            };
            out(
                q - t,
                2 * m + 1 - t as u32,
                vec![(0, int(1)), (q / 2 - h, lo), (q / 2, mid), (q / 2 + h, hi)],
            )
        }
        Tab6 | Tab7 => {
            binary_gate(tag, p, m, false, 4)?;
            let h = 1i128 << (m / 2);
            let l = 1i128 << ((m - 2) / 2);
            let s = int(h);
            let third = Q::new(1, 3);
            let (t, rows) = if tag == Tab6 {
                (
                    1,
                    [
                        third * two(mi / 2 - 3) * (int(2) + s) * int(q - 1),
                        third * s * (s - int(1)) * (int(1) + s) * (int(1) + s),
                        int(q - 1) * (int(1) + two(mi - 2)),
                        third * s * (s - int(1)) * (s - int(1)) * (int(1) + s),
                        third * two(mi / 2 - 3) * (s - int(2)) * int(q - 1),
                    ],
                )
            } else {
                (
                    2,
                    [
                        third * two(mi / 2 - 4) * (int(2) + s) * (int(q) + two(1 + mi / 2) - int(2)),
                        third * two(mi / 2 - 1) * (int(1) + s) * (int(q) + s - int(2)),
                        (two(mi - 1) - int(1)) * (int(1) + two(mi - 2)),
                        third * two(mi / 2 - 1) * (s - int(1)) * (int(q) - s - int(2)),
                        third
                            * two(mi / 2 - 4)
                            * (int(4) + two(1 + mi / 2) + two(3 * mi / 2) - two(2 + mi)),
                    ],
                )
            };
            let ws = [q / 2 - h, q / 2 - l, q / 2, q / 2 + l, q / 2 + h];
            let mut v = vec![(0, int(1))];
            v.extend(ws.into_iter().zip(rows));
            out(q - t, 2 * m + 1 - t as u32, v)
        }
        Tab8 | Tab9 => {
            binary_gate(tag, p, m, true, 5)?;
            let h = 1i128 << ((m - 1) / 2);
            let a = two((mi - 3) / 2);
            let b = two((3 * mi - 5) / 2);
            let (base, mid) = if tag == Tab8 {
                (two(mi - 3) + two(2 * mi - 5), int(-1) - two(mi - 2) + pw(4, mi - 2))
            } else {
                (
                    int(3) * two(mi - 4) + two(2 * mi - 5),
                    two(-4) * int(q - 8) * int(q + 2),
                )
            };
            out(
                q - 4,
                2 * m - 3,
                vec![(0, int(1)), (q / 2 - h, base - a + b), (q / 2, mid), (q / 2 + h, base + a - b)],
            )
        }
        Tab10 => {
            binary_gate(tag, p, m, false, 4)?;
            let lam = lambda.ok_or_else(|| Error::GateUnsatisfied(format!("{tag} needs lambda")))?;
            gate(lam >= 0, || format!("lambda must be non-negative, got {lam}"))?;
            let lam = int(lam as i128);
            let h = 1i128 << (m / 2);
            let l = 1i128 << ((m - 2) / 2);
            let s = int(h);
            let third = Q::new(1, 3);
            let rows = [
                third
                    * two(mi / 2 - 5)
                    * (int(8) + two(3 + mi / 2) + two(3 * mi / 2) + two(2 + mi) + int(12) * lam),
                third
                    * two(mi / 2 - 3)
                    * ((int(2) + s) * (int(-8) + int(3) * s + two(1 + mi)) - int(6) * lam),
                int(-1) + pw(4, mi - 2),
                third
                    * two(mi / 2 - 3)
                    * ((s - int(2)) * (int(-8) - int(3) * s + two(1 + mi)) + int(6) * lam),
                third
                    * two(mi / 2 - 5)
                    * (int(-8) + two(3 + mi / 2) + two(3 * mi / 2) - two(2 + mi) - int(12) * lam),
            ];
            let ws = [q / 2 - h, q / 2 - l, q / 2, q / 2 + l, q / 2 + h];
            let mut v = vec![(0, int(1))];
            v.extend(ws.into_iter().zip(rows));
            out(q - 3, 2 * m - 2, v)
        }
        Gf4 => {
            binary_gate(tag, p, m, false, 4)?;
            let h = 1i128 << (m / 2);
            let l = 1i128 << ((m - 2) / 2);
            let s = int(h);
            let e = int(sgn(mi / 2));
            let third = Q::new(1, 3);
            let tail = int(q) + e * s - int(2);
            let rows = [
                third
                    * two(mi / 2 - 6)
                    * (int(-16) + two(3 * mi / 2)
                        - two(mi + 1) * (int(-4) + e)
                        - two(4 + mi / 2) * (int(-1) + e)),
                Q::new(1, 24) * (two(mi / 2 + 2) + int(q)) * tail,
                int(-1) + two(2 * mi - 5) - e * two(3 * mi / 2 - 4),
                Q::new(1, 24) * (-two(mi / 2 + 2) + int(q)) * tail,
                third
                    * two(mi / 2 - 6)
                    * (int(16) + two(3 * mi / 2) - two(mi + 1) * (int(4) + e)
                        + two(4 + mi / 2) * (int(1) + e)),
            ];
            let ws = [q / 2 - h, q / 2 - l, q / 2, q / 2 + l, q / 2 + h];
            let mut v = vec![(0, int(1))];
            v.extend(ws.into_iter().zip(rows));
            out(q - 4, 2 * m - 3, v)
        }
        Tab11 | Tab12 => {
            odd_p_gate(tag, p, m, true, 3)?;
            let pi = p as i128;
            let w0 = q / pi * (pi - 1);
            let h = pi.pow((m - 1) / 2);
            let (t, c0, lo, hi) = if tag == Tab11 {
                let base = Q::new(1, 2) * int(pi - 1) * pp((mi - 3) / 2) * int(q - 1);
                (
                    1,
                    int(q - 1) * (int(1) + pp(mi - 1)),
                    base * (int(pi) + pp((1 + mi) / 2)),
                    base * (int(-pi) + pp((1 + mi) / 2)),
                )
            } else {
                let half = Q::new(pi - 1, 2);
                (
                    2,
                    pp(2 * mi - 2) - int(1),
                    half * (-pp((mi - 1) / 2) + pp(2 * mi - 2) + int(2) * pp((3 * mi - 3) / 2)),
                    half * (pp((mi - 1) / 2) + pp(2 * mi - 2) - int(2) * pp((3 * mi - 3) / 2)),
                )
            };
            out(
                q - t,
                2 * m + 1 - t as u32,
                vec![(0, int(1)), (w0, c0), (w0 - h, lo), (w0 + h, hi)],
            )
        }
        Tab13 | Tab14 => {
            odd_p_gate(tag, p, m, false, 2)?;
            let pi = p as i128;
            let w0 = q / pi * (pi - 1);
            let l = pi.pow((m - 2) / 2);
            let s = pp(mi / 2);
            let one = int(1);
            let pq = int(pi);
            let ws = [w0 - (pi - 1) * l, w0 - l, w0, w0 + l, w0 + (pi - 1) * l];
            let (t, rows) = if tag == Tab13 {
                let half = Q::new(1, 2);
                (
                    1,
                    [
                        pp(mi / 2 - 1) * (pq + s - one) * int(q - 1) * half,
                        int(pi - 1) * pp(mi / 2 - 1) * (s - one) * (one + s) * (one + s) * half,
                        int(q - 1),
                        int(pi - 1) * pp(mi / 2 - 1) * (s - one) * (s - one) * (one + s) * half,
                        pp(mi / 2 - 1) * (-pq + s + one) * int(q - 1) * half,
                    ],
                )
            } else {
                let half = Q::new(1, 2);
                (
                    2,
                    [
                        pp(mi / 2 - 2) * (s - one) * (-one + pq + s) * (pq + s) * half,
                        int(pi - 1) * pp(mi / 2 - 2) * (one + s) * (-pq + s + int(q)) * half,
                        pp(mi - 1) - one,
                        int(pi - 1) * pp(mi / 2 - 2) * (-one + s) * (-pq - s + int(q)) * half,
                        pp(mi / 2 - 2) * (s + one) * (one - pq + s) * (s - pq) * half,
                    ],
                )
            };
            let mut v = vec![(0, int(1))];
            v.extend(ws.into_iter().zip(rows));
            out(q - t, 2 * m + 1 - t as u32, v)
        }
        Tab15 => {
            odd_p_gate(tag, p, m, true, 3)?;
            let pi = p as i128;
            let pl = pi as i64;
            let w0 = q / pi * (pi - 1);
            let sh = sgn((pl - 1) * (mi + 1) / 4) * pi.pow((m - 1) / 2);
            let b = int(sgn(((q - 1) / 2) as i64 + (pl - 1) * (mi - 1) / 4)) * pp((mi - 1) / 2);
            let half = (pp(mi - 1) - int(1)) / int(2);
            out(
                q - pi,
                2 * m - 2,
                vec![
                    (0, int(1)),
                    (w0, (pp(mi - 1) - int(1)) * (pp(mi - 2) + int(1))),
                    (w0 - sh, half * int(pi - 1) * (pp(mi - 2) + b)),
                    (w0 + sh, half * int(pi - 1) * (pp(mi - 2) - b)),
                ],
            )
        }
        Tab16 => {
            odd_p_gate(tag, p, m, false, 2)?;
            let pi = p as i128;
            let pl = pi as i64;
            let w0 = q / pi * (pi - 1);
            let l = pi.pow((m - 2) / 2);
            // (sqrt(-1))^((p-1)m/2) is real since (p-1)m/2 is even.
            let i_pow = sgn((pl - 1) * mi / 4);
            let b1 = (pp(mi - 1) - int(1) - int((pi - 1) * l * i_pow)) / int(2);
            let b2 = int(sgn(((q + 1) / 2) as i64 + mi * (pl - 1) / 4) * (pi - 1) * l);
            let s0 = sgn(mi * (pl - 1) / 4);
            let s4 = sgn((mi * (pl - 1) + 4) / 4);
            let rest = pp(mi - 1) - int(1) - b1;
            out(
                q - pi,
                2 * m - 2,
                vec![
                    (0, int(1)),
                    (w0, pp(mi - 1) - int(1)),
                    (w0 - (pi - 1) * l * s4, b1 * (pp(mi - 2) + b2)),
                    (w0 - (pi - 1) * l * s0, rest * (pp(mi - 2) - b2)),
                    (w0 - l * s0, b1 * (pp(mi - 1) - pp(mi - 2) - b2)),
                    (w0 - l * s4, rest * (pp(mi - 1) - pp(mi - 2) + b2)),
                ],
            )
        }
    }
}
