//! Correction terms of lens spaces and the characteristic-covector bound for
//! negative-definite fillings.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{det_bareiss, inverse, smith_normal_form, Matrix};
use crate::Rational;

type Q = Ratio<BigInt>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("L({p},{q}) is not a lens space: need p >= 1, 0 <= q < p, gcd(p, q) = 1")]
    InvalidLensSpace { p: i64, q: i64 },
    #[error("form is not negative definite: {0}")]
    NotNegativeDefinite(String),
    #[error("rank {rank} exceeds the configured bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("no correction terms given")]
    EmptyCorrectionTerms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self, ObstructionError> {
        if p < 1 || q < 0 || q >= p || p.gcd(&q) != 1 {
            return Err(ObstructionError::InvalidLensSpace { p, q });
        }
        Ok(LensSpace { p, q })
    }

    pub fn sphere() -> Self {
        LensSpace { p: 1, q: 0 }
    }
}

/// Correction terms indexed by the recursion's labelling `0 <= i < p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionTable {
    pub values: Vec<Rational>,
}

impl CorrectionTable {
    /// Values sorted in decreasing order.
    pub fn sorted(&self) -> Vec<Rational> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    pub fn max(&self) -> Option<Rational> {
        self.values.iter().max().copied()
    }
}

fn d_rec(p: i64, q: i64, i: i64) -> Rational {
    if p == 1 {
        return Rational::zero();
    }
    let s = 2 * i + 1 - p - q;
    Rational::new(s * s - p * q, 4 * p * q) - d_rec(q, p % q, i % q)
}

pub fn lens_d(l: LensSpace) -> CorrectionTable {
    CorrectionTable { values: (0..l.p).map(|i| d_rec(l.p, l.q, i)).collect() }
}

/// Reduce into `[0, 2)`.
pub fn mod2(x: Rational) -> Rational {
    let two = Rational::from_integer(2);
    let k = (x / two).floor();
    x - k * two
}

/// Whether the values can be paired off equally, leaving at most as many
/// unpaired values as there are self-conjugate classes (`gcd(2, p)`).
pub fn conjugation_symmetric(t: &CorrectionTable) -> bool {
    let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
    for v in &t.values {
        *counts.entry(*v).or_default() += 1;
    }
    let odd = counts.values().filter(|c| *c % 2 == 1).count();
    odd <= if t.values.len().is_multiple_of(2) { 2 } else { 1 }
}

/// Hirzebruch-Jung continued fraction `a_1 - 1/(a_2 - ...)` with all `a_i >= 2`.
pub fn hirzebruch_jung(p: i64, q: i64) -> Vec<i64> {
    assert!(p > q && q >= 1);
    let (mut num, mut den) = (p, q);
    let mut out = Vec::new();
    while den != 0 {
        let a = Integer::div_ceil(&num, &den);
        out.push(a);
        let next = a * den - num;
        num = den;
        den = next;
    }
    out
}

/// Negative-definite linear plumbing bounded by `L(p, q)`: the chain with
/// weights `-a_i` from `p / (p - q)`.
pub fn lens_plumbing(l: LensSpace) -> Matrix<i64> {
    if l.p == 1 {
        return Matrix::zeros(0, 0);
    }
    let a = hirzebruch_jung(l.p, l.p - l.q);
    let k = a.len();
    let mut m = Matrix::zeros(k, k);
    for i in 0..k {
        m[(i, i)] = -a[i];
        if i + 1 < k {
            m[(i, i + 1)] = 1;
            m[(i + 1, i)] = 1;
        }
    }
    m
}

fn to_q(m: &Matrix<i64>) -> Matrix<Q> {
    m.map(|&v| Q::from_integer(BigInt::from(v)))
}

/// `Q^{-1} = adj / det` with integer `adj`, for exact dual norms.
struct Dual {
    adj: Matrix<i64>,
    det: i64,
}

impl Dual {
    fn new(q: &Matrix<i64>) -> Self {
        let det = det_bareiss(&q.map(|&v| BigInt::from(v)));
        let inv = inverse(&to_q(q)).expect("form is nondegenerate");
        let adj = inv.map(|x| {
            let v = x * Q::from_integer(det.clone());
            assert!(v.is_integer());
            v.to_integer().to_i64().expect("adjugate entry fits")
        });
        Dual { adj, det: det.to_i64().expect("determinant fits") }
    }

    /// `c^T Q^{-1} c`.
    fn norm(&self, c: &[i64]) -> Rational {
        Rational::new(self.adj.quadratic_form(c), self.det)
    }
}

/// Labels characteristic covectors by their class in `Z^n / Q Z^n`.
struct ClassMap {
    parity: Vec<i64>,
    left: Matrix<i64>,
    left_inv: Matrix<i64>,
    moduli: Vec<i64>,
}

impl ClassMap {
    fn new(q: &Matrix<i64>) -> Self {
        let s = smith_normal_form(q);
        ClassMap {
            parity: (0..q.rows()).map(|i| q[(i, i)].rem_euclid(2)).collect(),
            left: s.left,
            left_inv: s.left_inv,
            moduli: s.diagonal,
        }
    }

    fn label(&self, c: &[i64]) -> Vec<i64> {
        let y: Vec<i64> = c.iter().zip(&self.parity).map(|(a, b)| (a - b) / 2).collect();
        self.left.mul_vec(&y).iter().zip(&self.moduli).map(|(v, m)| v.rem_euclid(*m)).collect()
    }

    fn count(&self) -> usize {
        self.moduli.iter().map(|m| *m as usize).product()
    }

    /// One representative per class, keyed by label.
    fn representatives(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        let n = self.parity.len();
        let mut out = Vec::new();
        let mut t = vec![0i64; n];
        loop {
            let y = self.left_inv.mul_vec(&t);
            let c: Vec<i64> = self.parity.iter().zip(&y).map(|(a, b)| a + 2 * b).collect();
            out.push((t.clone(), c));
            let mut i = 0;
            while i < n {
                t[i] += 1;
                if t[i] < self.moduli[i] {
                    break;
                }
                t[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        out
    }
}

/// Characteristic covectors modulo `2 Q Z^n`: one representative per class,
/// keyed by the class label in `Z^n / Q Z^n`.
pub fn characteristic_classes(q: &Matrix<i64>) -> Vec<(Vec<i64>, Vec<i64>)> {
    ClassMap::new(q).representatives()
}

/// Class label of a characteristic covector, matching [`characteristic_classes`].
pub fn class_of(q: &Matrix<i64>, c: &[i64]) -> Vec<i64> {
    ClassMap::new(q).label(c)
}

/// `rho` values `(c^2 + b_2) / 4 mod 2` of the plumbing bounded by `L(p, q)`.
pub fn rho_lens(l: LensSpace) -> BTreeSet<Rational> {
    let q = lens_plumbing(l);
    if q.rows() == 0 {
        return BTreeSet::from([Rational::zero()]);
    }
    let dual = Dual::new(&q);
    let k = Rational::from_integer(q.rows() as i64);
    characteristic_classes(&q)
        .into_iter()
        .map(|(_, c)| mod2((dual.norm(&c) + k) / Rational::from_integer(4)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiniteForm {
    gram: Matrix<i64>,
}

pub const DEFAULT_RANK_BOUND: usize = 8;

impl DefiniteForm {
    pub fn new(gram: Matrix<i64>) -> Result<Self, ObstructionError> {
        Self::with_rank_bound(gram, DEFAULT_RANK_BOUND)
    }

    pub fn with_rank_bound(gram: Matrix<i64>, bound: usize) -> Result<Self, ObstructionError> {
        if !gram.is_square() || !gram.is_symmetric() {
            return Err(ObstructionError::NotNegativeDefinite("matrix is not symmetric".into()));
        }
        let n = gram.rows();
        if n > bound {
            return Err(ObstructionError::RankTooLarge { rank: n, bound });
        }
        // -Q is positive definite iff all its leading minors are positive.
        let neg = gram.map(|&v| BigInt::from(-v));
        for k in 1..=n {
            let idx: Vec<usize> = (0..k).collect();
            if !det_bareiss(&neg.submatrix(&idx, &idx)).is_positive() {
                return Err(ObstructionError::NotNegativeDefinite(format!("leading minor {k} has the wrong sign")));
            }
        }
        Ok(DefiniteForm { gram })
    }

    pub fn gram(&self) -> &Matrix<i64> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }
}

/// `-diag(1, ..., 1)`.
pub fn diagonal_form(n: usize) -> Matrix<i64> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = -1;
    }
    m
}

/// Negative of the E8 Cartan matrix: a chain of seven nodes with the eighth
/// attached to the fifth.
pub fn e8_form() -> Matrix<i64> {
    let mut m = Matrix::zeros(8, 8);
    for i in 0..8 {
        m[(i, i)] = -2;
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
        m[(a, b)] = 1;
        m[(b, a)] = 1;
    }
    m
}

/// `L D L^T` factors of a positive definite rational matrix.
fn ldl(p: &Matrix<Q>) -> (Matrix<Q>, Vec<Q>) {
    let n = p.rows();
    let mut l = Matrix::<Q>::identity(n);
    let mut d = vec![Q::zero(); n];
    for j in 0..n {
        let mut dj = p[(j, j)].clone();
        for k in 0..j {
            dj -= l[(j, k)].clone() * l[(j, k)].clone() * d[k].clone();
        }
        d[j] = dj;
        for i in j + 1..n {
            let mut v = p[(i, j)].clone();
            for k in 0..j {
                v -= l[(i, k)].clone() * l[(j, k)].clone() * d[k].clone();
            }
            l[(i, j)] = v / d[j].clone();
        }
    }
    (l, d)
}

fn qf(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(f64::MAX) / x.denom().to_f64().unwrap_or(1.0)
}

/// All characteristic covectors `c` with `-c^T Q^{-1} c <= bound`, by
/// depth-first enumeration on the `L D L^T` factors of `-Q^{-1}`.
fn short_characteristic(q: &Matrix<i64>, dual: &Dual, bound: Rational) -> Vec<Vec<i64>> {
    let n = q.rows();
    if n == 0 {
        return vec![Vec::new()];
    }
    let p = inverse(&to_q(q)).expect("form is nondegenerate").map(|x| -x.clone());
    let (l, d) = ldl(&p);
    let lf: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| qf(&l[(i, j)])).collect()).collect();
    let df: Vec<f64> = d.iter().map(qf).collect();
    let parity: Vec<i64> = (0..n).map(|i| q[(i, i)].rem_euclid(2)).collect();
    let mut out = Vec::new();
    let mut c = vec![0i64; n];
    struct Ctx<'a> {
        lf: &'a [Vec<f64>],
        df: &'a [f64],
        parity: &'a [i64],
        n: usize,
    }
    // -c^T Q^{-1} c = sum_j d_j (c_j + sum_{i>j} l_ij c_i)^2, fixed from the last index down.
    fn go(j: usize, c: &mut Vec<i64>, budget: f64, ctx: &Ctx, out: &mut Vec<Vec<i64>>) {
        let centre: f64 = -(j + 1..ctx.n).map(|i| ctx.lf[i][j] * c[i] as f64).sum::<f64>();
        let radius = (budget.max(0.0) / ctx.df[j]).sqrt() + 1e-6;
        let lo = (centre - radius).floor() as i64 - 1;
        let hi = (centre + radius).ceil() as i64 + 1;
        for v in lo..=hi {
            if (v - ctx.parity[j]).rem_euclid(2) != 0 {
                continue;
            }
            let t = v as f64 - centre;
            let rest = budget - ctx.df[j] * t * t;
            if rest < -1e-6 {
                continue;
            }
            c[j] = v;
            if j == 0 {
                out.push(c.clone());
            } else {
                go(j - 1, c, rest, ctx, out);
            }
        }
        c[j] = 0;
    }
    let slack = *bound.numer() as f64 / *bound.denom() as f64 + 1e-6;
    go(n - 1, &mut c, slack, &Ctx { lf: &lf, df: &df, parity: &parity, n }, &mut out);
    // The floating enumeration is a superset; keep the exact survivors.
    out.retain(|c| -dual.norm(c) <= bound);
    out
}

/// Maximum of `c^T Q^{-1} c + n` over characteristic covectors and the
/// lexicographically smallest maximizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicMax {
    pub m: Rational,
    pub witness: Vec<i64>,
}

pub fn characteristic_max(form: &DefiniteForm) -> CharacteristicMax {
    let q = form.gram();
    let n = q.rows();
    if n == 0 {
        return CharacteristicMax { m: Rational::zero(), witness: Vec::new() };
    }
    let dual = Dual::new(q);
    // The parity vector itself bounds the minimum of -c^T Q^{-1} c.
    let start: Vec<i64> = (0..n).map(|i| q[(i, i)].rem_euclid(2)).collect();
    let mut best: Option<(Rational, Vec<i64>)> = None;
    for c in short_characteristic(q, &dual, -dual.norm(&start)) {
        let v = dual.norm(&c);
        let better = match &best {
            None => true,
            Some((bv, bc)) => v > *bv || (v == *bv && c < *bc),
        };
        if better {
            best = Some((v, c));
        }
    }
    let (v, witness) = best.expect("the parity vector is a candidate");
    CharacteristicMax { m: v + Rational::from_integer(n as i64), witness }
}

/// Maximum of `(c^T Q^{-1} c + n) / 4` within each class of characteristic
/// covectors, keyed by class label.
pub fn class_maxima(q: &Matrix<i64>) -> BTreeMap<Vec<i64>, Rational> {
    let n = q.rows() as i64;
    let dual = Dual::new(q);
    let classes = ClassMap::new(q);
    let four = Rational::from_integer(4);
    // Grow the norm bound until every class has a short representative.
    let mut bound = Rational::from_integer(n.max(1));
    loop {
        let mut out: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
        for c in short_characteristic(q, &dual, bound) {
            let v = (dual.norm(&c) + Rational::from_integer(n)) / four;
            let e = out.entry(classes.label(&c)).or_insert(v);
            if v > *e {
                *e = v;
            }
        }
        if out.len() == classes.count() {
            return out;
        }
        bound *= Rational::from_integer(2);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Passes { m: Rational },
    Obstructed { m: Rational, witness: Vec<i64> },
}

impl Verdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Verdict::Obstructed { .. })
    }
}

/// Compare `m(Q)` with `4 max d`; a filling with this form needs `m(Q) <= 4 max d`.
pub fn definite_form_obstruction(form: &DefiniteForm, d_values: &[Rational]) -> Result<Verdict, ObstructionError> {
    let dmax = d_values.iter().max().copied().ok_or(ObstructionError::EmptyCorrectionTerms)?;
    let CharacteristicMax { m, witness } = characteristic_max(form);
    if m > dmax * Rational::from_integer(4) {
        Ok(Verdict::Obstructed { m, witness })
    } else {
        Ok(Verdict::Passes { m })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn lens_examples() {
        assert_eq!(lens_d(LensSpace::new(2, 1).unwrap()).values, vec![r(1, 4), r(-1, 4)]);
        assert_eq!(lens_d(LensSpace::sphere()).values, vec![r(0, 1)]);
        assert_eq!(lens_d(LensSpace::new(3, 1).unwrap()).values, vec![r(1, 2), r(-1, 6), r(-1, 6)]);
        // Reversing orientation negates every value.
        let mut a = lens_d(LensSpace::new(3, 2).unwrap()).sorted();
        a.iter_mut().for_each(|v| *v = -*v);
        a.reverse();
        assert_eq!(a, lens_d(LensSpace::new(3, 1).unwrap()).sorted());
        assert!(LensSpace::new(4, 2).is_err());
        assert!(LensSpace::new(3, 3).is_err());
    }

    #[test]
    fn conjugation() {
        assert!(conjugation_symmetric(&lens_d(LensSpace::new(3, 1).unwrap())));
        assert!(conjugation_symmetric(&CorrectionTable { values: vec![r(0, 1)] }));
        assert!(!conjugation_symmetric(&CorrectionTable { values: vec![r(1, 4), r(1, 8), r(1, 16)] }));
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(hirzebruch_jung(3, 2), vec![2, 2]);
        assert_eq!(hirzebruch_jung(7, 3), vec![3, 2, 2]);
        assert_eq!(hirzebruch_jung(5, 1), vec![5]);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_lens(LensSpace::new(2, 1).unwrap()), BTreeSet::from([r(1, 4), r(7, 4)]));
        assert_eq!(rho_lens(LensSpace::sphere()), BTreeSet::from([r(0, 1)]));
        let rho = rho_lens(LensSpace::new(3, 1).unwrap());
        for d in lens_d(LensSpace::new(3, 1).unwrap()).values {
            assert!(rho.contains(&mod2(d)));
        }
    }

    #[test]
    fn plumbing_maxima_are_correction_terms() {
        for (p, q) in [(2, 1), (3, 1), (3, 2), (5, 2), (7, 3), (8, 3)] {
            let l = LensSpace::new(p, q).unwrap();
            let mut maxima: Vec<Rational> = class_maxima(&lens_plumbing(l)).into_values().collect();
            maxima.sort_by(|a, b| b.cmp(a));
            assert_eq!(maxima, lens_d(l).sorted(), "L({p},{q})");
        }
    }

    #[test]
    fn definite_forms() {
        let diag = DefiniteForm::new(diagonal_form(8)).unwrap();
        let v = definite_form_obstruction(&diag, &[r(0, 1)]).unwrap();
        assert_eq!(v, Verdict::Passes { m: r(0, 1) });
        assert_eq!(characteristic_max(&diag).witness, vec![-1; 8]);
        let e8 = DefiniteForm::new(e8_form()).unwrap();
        assert_eq!(definite_form_obstruction(&e8, &[r(2, 1)]).unwrap(), Verdict::Passes { m: r(8, 1) });
        assert_eq!(
            definite_form_obstruction(&e8, &[r(0, 1)]).unwrap(),
            Verdict::Obstructed { m: r(8, 1), witness: vec![0; 8] }
        );
    }

    #[test]
    fn form_validation() {
        let pos = Matrix::from_rows(vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(DefiniteForm::new(pos), Err(ObstructionError::NotNegativeDefinite(_))));
        let indefinite = Matrix::from_rows(vec![vec![-1, 2], vec![2, -1]]);
        assert!(matches!(DefiniteForm::new(indefinite), Err(ObstructionError::NotNegativeDefinite(_))));
        assert_eq!(
            DefiniteForm::new(diagonal_form(9)),
            Err(ObstructionError::RankTooLarge { rank: 9, bound: 8 })
        );
        assert!(DefiniteForm::with_rank_bound(diagonal_form(9), 12).is_ok());
        let diag = DefiniteForm::new(diagonal_form(2)).unwrap();
        assert_eq!(definite_form_obstruction(&diag, &[]), Err(ObstructionError::EmptyCorrectionTerms));
    }
}
