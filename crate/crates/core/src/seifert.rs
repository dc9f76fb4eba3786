//! Seifert matrices of closed braids.
//!
//! The closure of an `n`-strand braid bounds a surface made of `n` stacked
//! disks joined by one half-twisted band per letter. For each generator `j`,
//! consecutive bands `p < q` of that generator span a loop; these loops
//! form a basis of the first homology of the surface. Used as an independent
//! route to the signature and the Alexander polynomial.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::linalg::{det_bareiss, signature, Matrix};
use crate::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Loop {
    generator: usize,
    first: usize,
    second: usize,
}

fn loops(word: &[i64]) -> Vec<Loop> {
    let top = word.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
    let mut out = Vec::new();
    for g in 1..=top {
        let pos: Vec<usize> = (0..word.len()).filter(|&i| word[i].unsigned_abs() as usize == g).collect();
        for w in pos.windows(2) {
            out.push(Loop { generator: g, first: w[0], second: w[1] });
        }
    }
    out
}

/// Seifert matrix `V` with `V[a][b] = lk(a, b^+)`.
pub fn braid_seifert_matrix(word: &[i64]) -> Matrix<i64> {
    let ls = loops(word);
    let k = ls.len();
    let sign = |i: usize| word[i].signum();
    let mut v = Matrix::zeros(k, k);
    for (a, la) in ls.iter().enumerate() {
        for (b, lb) in ls.iter().enumerate() {
            let val = if a == b {
                -(sign(la.first) + sign(la.second)) / 2
            } else if la.generator == lb.generator {
                if la.second == lb.first {
                    // Shared band, `b` follows `a`.
                    if sign(la.second) > 0 {
                        1
                    } else {
                        0
                    }
                } else if lb.second == la.first {
                    if sign(lb.second) > 0 {
                        0
                    } else {
                        -1
                    }
                } else {
                    0
                }
            } else if lb.generator == la.generator + 1 {
                // Chords on the shared disk cross when the intervals interleave.
                if la.first < lb.first && lb.first < la.second && la.second < lb.second {
                    -1
                } else if lb.first < la.first && la.first < lb.second && lb.second < la.second {
                    1
                } else {
                    0
                }
            } else {
                0
            };
            v[(a, b)] = val;
        }
    }
    v
}

pub fn seifert_signature(v: &Matrix<i64>) -> i64 {
    let sym = v.add(&v.transpose()).map(|&x| Ratio::from_integer(BigInt::from(x)));
    signature(&sym)
}

/// `det(V - t V^T)`, symmetrised and normalised to value `1` at `t = 1`.
pub fn seifert_alexander(v: &Matrix<i64>) -> Polynomial {
    let k = v.rows();
    if k == 0 {
        return Polynomial::one();
    }
    // Interpolate the degree <= k polynomial from k+1 integer samples.
    let samples: Vec<(i64, BigInt)> = (0..=k as i64)
        .map(|t| {
            let m = Matrix::from_rows(
                (0..k)
                    .map(|i| (0..k).map(|j| BigInt::from(v[(i, j)] - t * v[(j, i)])).collect())
                    .collect(),
            );
            (t, det_bareiss(&m))
        })
        .collect();
    let coeffs = interpolate(&samples);
    let p = Polynomial::from_coeffs(-(k as i64) / 2, coeffs);
    if p.eval_i64(1).unwrap_or(0) < 0 {
        -p
    } else {
        p
    }
}

fn interpolate(samples: &[(i64, BigInt)]) -> Vec<i64> {
    let n = samples.len();
    let mut acc = vec![Ratio::<BigInt>::zero(); n];
    for (i, (xi, yi)) in samples.iter().enumerate() {
        // Lagrange basis polynomial for node i, built coefficient by coefficient.
        let mut basis = vec![Ratio::from_integer(BigInt::from(1))];
        let mut denom = BigInt::from(1);
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Ratio::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c.clone();
                next[d] -= c.clone() * BigInt::from(*xj);
            }
            basis = next;
            denom *= BigInt::from(xi - xj);
        }
        for (d, c) in basis.into_iter().enumerate() {
            acc[d] += c * Ratio::new(yi.clone(), denom.clone());
        }
    }
    acc.into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated determinant has non-integral coefficient");
            c.to_integer().to_i64().expect("coefficient fits in i64")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_matrix() {
        let v = braid_seifert_matrix(&[1, 1, 1]);
        assert_eq!(v.to_rows(), vec![vec![-1, 1], vec![0, -1]]);
        assert_eq!(seifert_signature(&v), -2);
        assert_eq!(seifert_alexander(&v).to_string(), "T - 1 + T^-1");
    }

    #[test]
    fn figure_eight() {
        let v = braid_seifert_matrix(&[1, -2, 1, -2]);
        assert_eq!(seifert_signature(&v), 0);
        assert_eq!(seifert_alexander(&v).to_string(), "-T + 3 - T^-1");
    }

    #[test]
    fn unit_determinant() {
        for w in [vec![1, 1, 1, 1, 1], vec![1, 2, 1, 2, 1, 2, 1, 2], vec![1, 1, 1, 2, -1, 2]] {
            let v = braid_seifert_matrix(&w);
            let diff = v.add(&v.transpose().map(|x| -x));
            assert_eq!(det_bareiss(&diff).abs(), 1);
        }
    }
}
