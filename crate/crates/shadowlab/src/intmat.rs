//! Exact 2×2 integer matrix powers and the trace-growth witness.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// A 2×2 integer matrix; the trace-growth search requires determinant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerMatrix2 {
    pub entries: [[i64; 2]; 2],
}

impl IntegerMatrix2 {
    pub fn new(entries: [[i64; 2]; 2]) -> Self {
        IntegerMatrix2 { entries }
    }

    pub fn det(&self) -> i64 {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }
}

type BigMat = [[BigInt; 2]; 2];

fn big_from(m: &IntegerMatrix2) -> BigMat {
    let e = &m.entries;
    [
        [BigInt::from(e[0][0]), BigInt::from(e[0][1])],
        [BigInt::from(e[1][0]), BigInt::from(e[1][1])],
    ]
}

fn big_mul(a: &BigMat, b: &BigMat) -> BigMat {
    let mut c: BigMat = [
        [BigInt::from(0), BigInt::from(0)],
        [BigInt::from(0), BigInt::from(0)],
    ];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        }
    }
    c
}

/// Least n ≤ n_max with tr(Aⁿ) ≥ 2, computed in exact integer arithmetic.
/// `Ok(None)` when no witness exists within the budget.
pub fn trace_growth_witness(a: &IntegerMatrix2, n_max: usize) -> Result<Option<usize>> {
    if a.det() != 1 {
        return Err(Error::precondition(format!(
            "determinant must be 1, got {}",
            a.det()
        )));
    }
    let base = big_from(a);
    let mut power = base.clone();
    for n in 1..=n_max {
        let tr = &power[0][0] + &power[1][1];
        if tr >= BigInt::from(2) {
            return Ok(Some(n));
        }
        power = big_mul(&power, &base);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn unipotent_witness_is_one() {
        let a = IntegerMatrix2::new([[1, 1], [0, 1]]);
        assert_eq!(trace_growth_witness(&a, 10).unwrap(), Some(1));
    }

    #[test]
    fn quarter_rotation_witness_is_four() {
        let a = IntegerMatrix2::new([[0, -1], [1, 0]]);
        assert_eq!(trace_growth_witness(&a, 10).unwrap(), Some(4));
    }

    #[test]
    fn hyperbolic_witness_is_one() {
        let a = IntegerMatrix2::new([[2, 1], [1, 1]]);
        assert_eq!(trace_growth_witness(&a, 10).unwrap(), Some(1));
    }

    #[test]
    fn rejects_non_unimodular() {
        let a = IntegerMatrix2::new([[2, 0], [0, 1]]);
        assert!(trace_growth_witness(&a, 10).is_err());
    }

    #[test]
    fn agrees_with_brute_force_float_powering() {
        // exact powering vs naive i128 powering on several SL(2,Z) matrices
        let mats = [
            [[1, 1], [0, 1]],
            [[0, -1], [1, 0]],
            [[2, 1], [1, 1]],
            [[1, -1], [1, 0]],
            [[3, 2], [4, 3]],
        ];
        for entries in mats {
            let a = IntegerMatrix2::new(entries);
            let witness = trace_growth_witness(&a, 24).unwrap();
            // brute force with i128
            let mut p = [
                [entries[0][0] as i128, entries[0][1] as i128],
                [entries[1][0] as i128, entries[1][1] as i128],
            ];
            let mut brute = None;
            for n in 1..=24usize {
                if p[0][0] + p[1][1] >= 2 {
                    brute = Some(n);
                    break;
                }
                let b = [
                    [entries[0][0] as i128, entries[0][1] as i128],
                    [entries[1][0] as i128, entries[1][1] as i128],
                ];
                p = [
                    [
                        p[0][0] * b[0][0] + p[0][1] * b[1][0],
                        p[0][0] * b[0][1] + p[0][1] * b[1][1],
                    ],
                    [
                        p[1][0] * b[0][0] + p[1][1] * b[1][0],
                        p[1][0] * b[0][1] + p[1][1] * b[1][1],
                    ],
                ];
            }
            assert_eq!(witness, brute, "matrix {entries:?}");
        }
    }

    #[test]
    fn big_powers_do_not_overflow() {
        // entries grow past i64 for hyperbolic matrices; make sure the
        // BigInt path really is exercised
        let a = IntegerMatrix2::new([[2, 1], [1, 1]]);
        let base = big_from(&a);
        let mut p = base.clone();
        for _ in 0..120 {
            p = big_mul(&p, &base);
        }
        assert!((&p[0][0] + &p[1][1]).to_f64().unwrap() > 1e40);
    }
}
