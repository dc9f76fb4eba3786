//! Knot Floer homology from structure theorems: alternating knots, L-space
//! knots, connected sums and the symmetries of the bigraded group.
//!
//! Gradings are written `(A, M)`: Alexander first, Maslov second.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HfkError {
    #[error("signature {0} is odd")]
    OddSignature(i64),
    #[error("Alexander polynomial is not symmetric with value 1 at T = 1: {0}")]
    NotNormalized(String),
    #[error("coefficient of T^{exponent} has the wrong sign for signature {sigma}")]
    SignMismatch { exponent: i64, sigma: i64 },
    #[error("not the Alexander polynomial of an L-space knot: {0}")]
    NotLSpaceForm(String),
    #[error("p = {0} and q = {1} are not coprime integers >= 2")]
    NotCoprime(i64, i64),
    #[error("Kunneth formula needs torsion-free groups; torsion at {0:?}")]
    TorsionInput((i64, i64)),
    #[error("the zero group has no genus")]
    ZeroGroup,
    #[error("route does not apply: {0}")]
    RouteInapplicable(String),
    #[error("inconsistent inputs: |tau| = {tau} exceeds genus {genus}")]
    InconsistentInputs { tau: i64, genus: i64 },
}

/// Group in a single bigrading.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summand {
    pub free_rank: u64,
    pub torsion: Vec<u64>,
}

impl Summand {
    pub fn free(rank: u64) -> Self {
        Summand { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Finitely supported bigraded abelian group keyed by `(A, M)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedGroup {
    entries: BTreeMap<(i64, i64), Summand>,
}

impl BigradedGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The group of the unknot, `Z` at `(0, 0)`.
    pub fn unknot() -> Self {
        Self::from_ranks([((0, 0), 1)])
    }

    pub fn from_ranks<I: IntoIterator<Item = ((i64, i64), u64)>>(ranks: I) -> Self {
        let mut g = Self::zero();
        for (k, r) in ranks {
            g.add_free(k, r);
        }
        g
    }

    /// One `Z` per listed bigrading, repeats accumulating.
    pub fn from_generators<'a, I: IntoIterator<Item = &'a (i64, i64)>>(gens: I) -> Self {
        Self::from_ranks(gens.into_iter().map(|&k| (k, 1)))
    }

    pub fn add_free(&mut self, key: (i64, i64), rank: u64) {
        if rank == 0 {
            return;
        }
        self.entries.entry(key).or_default().free_rank += rank;
    }

    pub fn insert(&mut self, key: (i64, i64), summand: Summand) {
        if summand.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, summand);
        }
    }

    pub fn get(&self, a: i64, m: i64) -> Option<&Summand> {
        self.entries.get(&(a, m))
    }

    pub fn rank(&self, a: i64, m: i64) -> u64 {
        self.get(a, m).map_or(0, |s| s.free_rank)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64), &Summand)> {
        self.entries.iter()
    }

    /// Free ranks in descending `(A, M)` order.
    pub fn ranks_descending(&self) -> Vec<((i64, i64), u64)> {
        self.entries.iter().rev().map(|(&k, s)| (k, s.free_rank)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_rank(&self) -> u64 {
        self.entries.values().map(|s| s.free_rank).sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.entries.values().all(|s| s.torsion.is_empty())
    }

    /// Bigradings listed once per free summand, sorted.
    pub fn multiset(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (&k, s) in &self.entries {
            out.extend(std::iter::repeat_n(k, s.free_rank as usize));
        }
        out
    }
}

impl fmt::Display for BigradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .rev()
            .map(|(&(a, m), s)| {
                let mut t = match s.free_rank {
                    0 => String::new(),
                    1 => "Z".to_string(),
                    r => format!("Z^{r}"),
                };
                for n in &s.torsion {
                    if !t.is_empty() {
                        t.push('+');
                    }
                    t.push_str(&format!("Z/{n}"));
                }
                format!("({a},{m}):{t}")
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn check_normalized(delta: &Polynomial) -> Result<(), HfkError> {
    if !delta.is_symmetric() || delta.eval_i64(1) != Some(1) {
        return Err(HfkError::NotNormalized(delta.to_string()));
    }
    Ok(())
}

/// `Z^|a_s|` at `(s, s + sigma/2)` for each coefficient `a_s` of `delta`.
/// Each `a_s` must have sign `(-1)^(s + sigma/2)`, as for every alternating knot.
pub fn alternating_hfk(delta: &Polynomial, sigma: i64) -> Result<BigradedGroup, HfkError> {
    if sigma.is_odd() {
        return Err(HfkError::OddSignature(sigma));
    }
    check_normalized(delta)?;
    if let Some((exponent, _)) = delta.terms().find(|&(s, a)| (s + sigma / 2).is_odd() != (*a < 0)) {
        return Err(HfkError::SignMismatch { exponent, sigma });
    }
    Ok(BigradedGroup::from_ranks(delta.terms().map(|(s, a)| ((s, s + sigma / 2), a.unsigned_abs()))))
}

/// Staircase data: exponents `n_{-m} < ... < n_m` and gradings `delta_i`,
/// both stored in increasing index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub n: Vec<i64>,
    pub delta: Vec<i64>,
}

impl Staircase {
    /// Half-length `m`, so indices run over `-m..=m`.
    pub fn m(&self) -> i64 {
        (self.n.len() as i64 - 1) / 2
    }

    pub fn n_at(&self, i: i64) -> i64 {
        self.n[(i + self.m()) as usize]
    }

    pub fn delta_at(&self, i: i64) -> i64 {
        self.delta[(i + self.m()) as usize]
    }
}

pub fn lspace_staircase(delta: &Polynomial) -> Result<Staircase, HfkError> {
    let terms: Vec<(i64, i64)> = delta.terms().map(|(e, &c)| (e, c)).collect();
    if terms.is_empty() || terms.len().is_multiple_of(2) {
        return Err(HfkError::NotLSpaceForm(format!("support of {} has even size", delta)));
    }
    if let Some(&(e, c)) = terms.iter().find(|(_, c)| c.abs() != 1) {
        return Err(HfkError::NotLSpaceForm(format!("coefficient {c} at T^{e}")));
    }
    if terms.last().map(|t| t.1) != Some(1) {
        return Err(HfkError::NotLSpaceForm("top coefficient is not +1".into()));
    }
    if terms.windows(2).any(|w| w[0].1 == w[1].1) {
        return Err(HfkError::NotLSpaceForm("coefficients do not alternate in sign".into()));
    }
    let n: Vec<i64> = terms.iter().map(|t| t.0).collect();
    if n.iter().zip(n.iter().rev()).any(|(a, b)| a + b != 0) {
        return Err(HfkError::NotLSpaceForm("exponents are not symmetric".into()));
    }
    let len = n.len();
    let mut d = vec![0i64; len];
    // Position `len - 1` is index m; walking down, m - i is the distance from the top.
    for pos in (0..len - 1).rev() {
        let from_top = len - 1 - pos;
        d[pos] = if from_top % 2 == 1 { d[pos + 1] - 2 * (n[pos + 1] - n[pos]) + 1 } else { d[pos + 1] - 1 };
    }
    Ok(Staircase { n, delta: d })
}

pub fn staircase_to_group(s: &Staircase) -> BigradedGroup {
    BigradedGroup::from_ranks(s.n.iter().zip(&s.delta).map(|(&a, &m)| ((a, m), 1)))
}

/// Symmetrized Alexander polynomial of the torus knot `T(p, q)`.
pub fn torus_alexander(p: i64, q: i64) -> Result<Polynomial, HfkError> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(HfkError::NotCoprime(p, q));
    }
    let x = |k: i64| Polynomial::from_terms([(k, 1), (0, -1)]);
    let num = &x(p * q) * &x(1);
    let den = &x(p) * &x(q);
    let quotient = num.div_exact(&den).expect("cyclotomic quotient is exact");
    Ok(quotient.shift(-(p - 1) * (q - 1) / 2))
}

/// Bigraded tensor product of torsion-free groups.
pub fn kunneth(g1: &BigradedGroup, g2: &BigradedGroup) -> Result<BigradedGroup, HfkError> {
    for g in [g1, g2] {
        if let Some((&k, _)) = g.entries().find(|(_, s)| !s.torsion.is_empty()) {
            return Err(HfkError::TorsionInput(k));
        }
    }
    let mut out = BigradedGroup::zero();
    for (&(a1, m1), s1) in g1.entries() {
        for (&(a2, m2), s2) in g2.entries() {
            out.add_free((a1 + a2, m1 + m2), s1.free_rank * s2.free_rank);
        }
    }
    Ok(out)
}

/// Group of the mirror knot: `(A, M) -> (-A, -M)`.
pub fn mirror_hfk(g: &BigradedGroup) -> BigradedGroup {
    let mut out = BigradedGroup::zero();
    for (&(a, m), s) in g.entries() {
        out.insert((-a, -m), s.clone());
    }
    out
}

/// Whether `(A, M)` and `(-A, M - 2A)` carry isomorphic groups throughout.
pub fn check_conjugation(g: &BigradedGroup) -> bool {
    g.entries().all(|(&(a, m), s)| g.get(-a, m - 2 * a) == Some(s))
}

pub fn euler_characteristic(g: &BigradedGroup) -> Polynomial {
    Polynomial::from_terms(g.entries().map(|(&(a, m), s)| {
        let r = s.free_rank as i64;
        (a, if m.is_even() { r } else { -r })
    }))
}

/// Largest Alexander grading with a nonzero group.
pub fn genus(g: &BigradedGroup) -> Result<u64, HfkError> {
    let top = g.entries().map(|(&(a, _), _)| a).max().ok_or(HfkError::ZeroGroup)?;
    Ok(top.unsigned_abs())
}

/// Ways of computing tau for knots where it is determined by classical data.
#[derive(Clone, Debug, PartialEq)]
pub enum TauRoute {
    /// Alternating knot with the given signature.
    Alternating { sigma: i64 },
    /// L-space knot with the given Alexander polynomial.
    LSpace(Polynomial),
    Torus { p: i64, q: i64 },
    /// Closure of a positive braid with `crossings` letters on `strands` strands.
    PositiveBraid { crossings: i64, strands: i64 },
}

pub fn tau(route: &TauRoute) -> Result<i64, HfkError> {
    match route {
        TauRoute::Alternating { sigma } => {
            if sigma.is_odd() {
                return Err(HfkError::RouteInapplicable(format!("odd signature {sigma}")));
            }
            Ok(-sigma / 2)
        }
        TauRoute::LSpace(delta) => {
            lspace_staircase(delta).map_err(|e| HfkError::RouteInapplicable(e.to_string()))?;
            Ok(delta.max_degree().unwrap_or(0))
        }
        TauRoute::Torus { p, q } => {
            if *p < 2 || *q < 2 || p.gcd(q) != 1 {
                return Err(HfkError::RouteInapplicable(format!("T({p},{q}) is not a torus knot")));
            }
            Ok((p - 1) * (q - 1) / 2)
        }
        TauRoute::PositiveBraid { crossings, strands } => {
            let twice = crossings - strands + 1;
            if *strands < 1 || twice < 0 || twice.is_odd() {
                return Err(HfkError::RouteInapplicable(format!(
                    "{crossings} crossings on {strands} strands cannot close to a knot"
                )));
            }
            Ok(twice / 2)
        }
    }
}

/// Certified range for the four-ball genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourBallBounds {
    pub lower: i64,
    pub upper: i64,
}

impl FourBallBounds {
    pub fn determined(&self) -> bool {
        self.lower == self.upper
    }
}

pub fn fourball_bounds(tau: i64, genus: i64) -> Result<FourBallBounds, HfkError> {
    if genus < 0 || tau.abs() > genus {
        return Err(HfkError::InconsistentInputs { tau, genus });
    }
    Ok(FourBallBounds { lower: tau.abs(), upper: genus })
}
