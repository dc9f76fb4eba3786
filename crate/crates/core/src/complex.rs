//! Finite free chain complexes over `Z[U]` and their flavors.
//!
//! A generator `x` together with its `U`-translates gives the tower
//! `[x, i]` of grading `gr(x) + 2i`, with `U [x, i] = [x, i - 1]`. The
//! minus flavor uses `i < 0`, the plus flavor `i >= 0`, and the hat flavor is
//! the `U = 0` specialization. All `Z[U]` modules are handled through finite
//! truncations in `i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hfk::Summand;
use crate::linalg::{from_columns, kernel_basis, rank, smith_normal_form, Matrix};
use crate::scalar::{Field, F2};

type Q = Ratio<BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[default]
    #[serde(alias = "z", alias = "integer")]
    Integers,
    #[serde(alias = "z2", alias = "f2", alias = "z/2")]
    Mod2,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("d^2 is nonzero: coefficient {coeff} on U^{upower} {target} in d^2({source_gen})")]
    DSquaredNonzero { source_gen: String, target: String, upower: u32, coeff: i64 },
    #[error("arrow {from} -> U^{upower} {to} does not drop grading by one ({from_grading} -> {to_grading})")]
    GradingMismatch { from: String, to: String, upower: u32, from_grading: i64, to_grading: i64 },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("arrow {from} -> {to} cannot be cancelled: {reason}")]
    NotCancellable { from: String, to: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub grading: i64,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub from: String,
    pub to: String,
    #[serde(default = "one")]
    pub coeff: i64,
    #[serde(default)]
    pub upower: u32,
}

/// Serialized description of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub differential: Vec<ArrowSpec>,
    #[serde(default)]
    pub ring: Coefficients,
}

/// Validated complex. `arrows[(x, y, k)] = c` means `d x` contains `c U^k y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UComplex {
    names: Vec<String>,
    gradings: Vec<i64>,
    arrows: BTreeMap<(usize, usize, u32), i64>,
    ring: Coefficients,
}

fn reduce(c: i64, ring: Coefficients) -> i64 {
    match ring {
        Coefficients::Integers => c,
        Coefficients::Mod2 => c.rem_euclid(2),
    }
}

pub fn build_complex(spec: &ComplexSpec) -> Result<UComplex, ComplexError> {
    let mut index = HashMap::new();
    for (i, g) in spec.generators.iter().enumerate() {
        if index.insert(g.name.clone(), i).is_some() {
            return Err(ComplexError::DuplicateGenerator(g.name.clone()));
        }
    }
    let lookup = |n: &str| index.get(n).copied().ok_or_else(|| ComplexError::UnknownGenerator(n.to_string()));
    let mut arrows = BTreeMap::new();
    for a in &spec.differential {
        let (x, y) = (lookup(&a.from)?, lookup(&a.to)?);
        *arrows.entry((x, y, a.upower)).or_insert(0) += a.coeff;
    }
    let c = UComplex {
        names: spec.generators.iter().map(|g| g.name.clone()).collect(),
        gradings: spec.generators.iter().map(|g| g.grading).collect(),
        arrows,
        ring: spec.ring,
    }
    .normalized();
    c.validate()?;
    Ok(c)
}

impl UComplex {
    fn normalized(mut self) -> Self {
        let ring = self.ring;
        self.arrows = self
            .arrows
            .into_iter()
            .map(|(k, c)| (k, reduce(c, ring)))
            .filter(|&(_, c)| c != 0)
            .collect();
        self
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for &(x, y, k) in self.arrows.keys() {
            if self.gradings[y] - 2 * k as i64 != self.gradings[x] - 1 {
                return Err(ComplexError::GradingMismatch {
                    from: self.names[x].clone(),
                    to: self.names[y].clone(),
                    upower: k,
                    from_grading: self.gradings[x],
                    to_grading: self.gradings[y],
                });
            }
        }
        let mut square: BTreeMap<(usize, usize, u32), i64> = BTreeMap::new();
        for (&(x, y, k1), &c1) in &self.arrows {
            for (&(_, z, k2), &c2) in self.arrows.range((y, 0, 0)..=(y, usize::MAX, u32::MAX)) {
                *square.entry((x, z, k1 + k2)).or_insert(0) += c1 * c2;
            }
        }
        if let Some((&(x, z, k), &c)) = square.iter().find(|(_, &c)| reduce(c, self.ring) != 0) {
            return Err(ComplexError::DSquaredNonzero {
                source_gen: self.names[x].clone(),
                target: self.names[z].clone(),
                upower: k,
                coeff: c,
            });
        }
        Ok(())
    }

    pub fn spec(&self) -> ComplexSpec {
        ComplexSpec {
            generators: self
                .names
                .iter()
                .zip(&self.gradings)
                .map(|(n, &g)| GeneratorSpec { name: n.clone(), grading: g })
                .collect(),
            differential: self
                .arrows
                .iter()
                .map(|(&(x, y, k), &c)| ArrowSpec {
                    from: self.names[x].clone(),
                    to: self.names[y].clone(),
                    coeff: c,
                    upower: k,
                })
                .collect(),
            ring: self.ring,
        }
    }

    pub fn ring(&self) -> Coefficients {
        self.ring
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gradings(&self) -> &[i64] {
        &self.gradings
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Coefficient of `U^k y` in `d x`.
    pub fn coefficient(&self, x: usize, y: usize, k: u32) -> i64 {
        self.arrows.get(&(x, y, k)).copied().unwrap_or(0)
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, u32, i64)> + '_ {
        self.arrows.iter().map(|(&(x, y, k), &c)| (x, y, k, c))
    }

    /// Same generators with coefficients reduced into `ring`.
    pub fn with_ring(&self, ring: Coefficients) -> UComplex {
        let mut c = self.clone();
        c.ring = ring;
        c.normalized()
    }

    /// The `U = 0` part of the differential as a complex in its own right.
    pub fn hat_part(&self) -> UComplex {
        let mut c = self.clone();
        c.arrows.retain(|&(_, _, k), _| k == 0);
        c
    }

    pub fn direct_sum(&self, other: &UComplex) -> UComplex {
        assert_eq!(self.ring, other.ring, "direct sum over different rings");
        let off = self.names.len();
        let mut c = self.clone();
        c.names.extend(other.names.iter().map(|n| format!("{n}'")));
        c.gradings.extend(&other.gradings);
        for (&(x, y, k), &v) in &other.arrows {
            c.arrows.insert((x + off, y + off, k), v);
        }
        c
    }

    /// Gaussian elimination of a unit arrow `from -> to` with no `U` power.
    pub fn cancel_arrow(&self, from: usize, to: usize) -> Result<UComplex, ComplexError> {
        let err = |reason: &str| ComplexError::NotCancellable {
            from: self.names[from].clone(),
            to: self.names[to].clone(),
            reason: reason.to_string(),
        };
        let c = self.coefficient(from, to, 0);
        if c.abs() != 1 {
            return Err(err("coefficient is not a unit"));
        }
        if self.arrows.keys().any(|&(x, y, k)| x == from && y == to && k > 0) {
            return Err(err("arrow also carries U powers"));
        }
        let mut arrows: BTreeMap<(usize, usize, u32), i64> = BTreeMap::new();
        for (&(x, y, k), &v) in &self.arrows {
            if x != from && x != to && y != from && y != to {
                *arrows.entry((x, y, k)).or_insert(0) += v;
            }
        }
        // Zigzag z -> to <- from -> w contributes -<dz,to> c^-1 <dfrom,w>.
        for (&(z, t, k1), &v1) in &self.arrows {
            if t != to || z == from || z == to {
                continue;
            }
            for (&(f, w, k2), &v2) in &self.arrows {
                if f != from || w == to || w == from {
                    continue;
                }
                *arrows.entry((z, w, k1 + k2)).or_insert(0) -= v1 * c * v2;
            }
        }
        let keep: Vec<usize> = (0..self.names.len()).filter(|&i| i != from && i != to).collect();
        let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let out = UComplex {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            gradings: keep.iter().map(|&i| self.gradings[i]).collect(),
            arrows: arrows.into_iter().map(|((x, y, k), v)| ((new_index[&x], new_index[&y], k), v)).collect(),
            ring: self.ring,
        }
        .normalized();
        out.validate()?;
        Ok(out)
    }

    /// Truncation spanned by `[x, i]` with `low <= i <= high`, a quotient of
    /// the subcomplex `i <= high`.
    fn truncate(&self, low: i64, high: i64) -> Truncation {
        let n = self.names.len();
        let width = (high - low + 1).max(0) as usize;
        let gradings: Vec<i64> =
            (0..width).flat_map(|t| (0..n).map(move |x| (t, x))).map(|(t, x)| self.gradings[x] + 2 * (low + t as i64)).collect();
        let mut entries = Vec::new();
        for t in 0..width {
            let i = low + t as i64;
            for (&(x, y, k), &v) in &self.arrows {
                let j = i - k as i64;
                if j >= low {
                    entries.push((t * n + x, (j - low) as usize * n + y, v));
                }
            }
        }
        Truncation { gradings, entries, ring: self.ring }
    }
}

/// Finite complex over the coefficient ring: basis gradings and
/// `(column, row, coefficient)` entries of the differential.
#[derive(Clone, Debug)]
struct Truncation {
    gradings: Vec<i64>,
    entries: Vec<(usize, usize, i64)>,
    ring: Coefficients,
}

impl Truncation {
    fn len(&self) -> usize {
        self.gradings.len()
    }

    fn basis_in(&self, g: i64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.gradings[i] == g).collect()
    }

    fn grading_range(&self) -> Option<(i64, i64)> {
        Some((*self.gradings.iter().min()?, *self.gradings.iter().max()?))
    }

    /// Block of the differential from grading `g` to grading `g - 1`.
    fn block(&self, g: i64) -> (Vec<usize>, Vec<usize>, Matrix<i64>) {
        let cols = self.basis_in(g);
        let rows = self.basis_in(g - 1);
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for &(c, r, v) in &self.entries {
            if let (Some(ci), Some(ri)) = (cols.iter().position(|&x| x == c), rows.iter().position(|&x| x == r)) {
                m[(ri, ci)] += v;
            }
        }
        (rows, cols, m)
    }

    fn homology(&self) -> GradedGroup {
        let mut out = GradedGroup::zero(self.ring);
        let Some((lo, hi)) = self.grading_range() else {
            return out;
        };
        for g in lo..=hi {
            let s = match self.ring {
                Coefficients::Integers => integer_homology(self, g).0,
                Coefficients::Mod2 => Summand::free(field_homology_dim::<F2>(self, g, F2::from_int) as u64),
            };
            out.insert(g, s);
        }
        out
    }
}

/// Homology at grading `g` over `Z`, with cycles representing free generators.
fn integer_homology(t: &Truncation, g: i64) -> (Summand, Vec<Vec<i64>>) {
    let (_, cols, out) = t.block(g);
    let (_, _, inc) = t.block(g + 1);
    let n = cols.len();
    if n == 0 {
        return (Summand::default(), Vec::new());
    }
    let s = smith_normal_form(&out);
    let r_out = s.rank();
    let kdim = n - r_out;
    // Incoming boundaries in the basis given by the columns of `right`.
    let coords = s.right_inv.mul(&inc);
    let krows: Vec<usize> = (r_out..n).collect();
    let all_cols: Vec<usize> = (0..coords.cols()).collect();
    let b = coords.submatrix(&krows, &all_cols);
    let sb = smith_normal_form(&b);
    let r_in = sb.rank();
    let torsion: Vec<u64> = sb.diagonal.iter().take(r_in).filter(|d| **d > 1).map(|&d| d as u64).collect();
    let kernel = s.right.submatrix(&(0..n).collect::<Vec<_>>(), &krows);
    let gens = kernel.mul(&sb.left_inv);
    let free: Vec<Vec<i64>> = (r_in..kdim).map(|j| gens.column(j)).collect();
    (Summand { free_rank: (kdim - r_in) as u64, torsion }, free)
}

fn field_matrix<F: Field>(m: &Matrix<i64>, conv: fn(i64) -> F) -> Matrix<F> {
    m.map(|&v| conv(v))
}

fn field_homology_dim<F: Field>(t: &Truncation, g: i64, conv: fn(i64) -> F) -> usize {
    let (_, cols, out) = t.block(g);
    let (_, _, inc) = t.block(g + 1);
    cols.len() - rank(&field_matrix(&out, conv)) - rank(&field_matrix(&inc, conv))
}

/// Rank of the map induced on homology at grading `g` by a grading-preserving
/// linear map `f` (entries `(source, target, coefficient)`).
fn induced_rank<F: Field>(a: &Truncation, b: &Truncation, f: &[(usize, usize, i64)], g: i64, conv: fn(i64) -> F) -> usize {
    let (_, a_cols, a_out) = a.block(g);
    let cycles = kernel_basis(&field_matrix(&a_out, conv));
    let b_basis = b.basis_in(g);
    let pos: HashMap<usize, usize> = b_basis.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut images = Vec::new();
    for z in &cycles {
        let mut v = vec![F::zero(); b_basis.len()];
        for &(src, dst, c) in f {
            if let (Some(ai), Some(&bi)) = (a_cols.iter().position(|&x| x == src), pos.get(&dst)) {
                v[bi] = v[bi].clone() + z[ai].clone() * conv(c);
            }
        }
        images.push(v);
    }
    let (_, _, b_in) = b.block(g + 1);
    let bounds = field_matrix(&b_in, conv);
    let mut cols: Vec<Vec<F>> = (0..bounds.cols()).map(|j| bounds.column(j)).collect();
    let rank_b = rank(&from_columns(b_basis.len(), &cols));
    cols.extend(images);
    rank(&from_columns(b_basis.len(), &cols)) - rank_b
}

/// Graded abelian group, or graded vector space over `Z/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGroup {
    pub ring: Coefficients,
    entries: BTreeMap<i64, Summand>,
}

impl GradedGroup {
    pub fn zero(ring: Coefficients) -> Self {
        GradedGroup { ring, entries: BTreeMap::new() }
    }

    pub fn from_ranks<I: IntoIterator<Item = (i64, u64)>>(ring: Coefficients, ranks: I) -> Self {
        let mut g = Self::zero(ring);
        for (k, r) in ranks {
            g.insert(k, Summand::free(r));
        }
        g
    }

    pub fn insert(&mut self, grading: i64, s: Summand) {
        if s.is_zero() {
            self.entries.remove(&grading);
        } else {
            self.entries.insert(grading, s);
        }
    }

    pub fn get(&self, grading: i64) -> Option<&Summand> {
        self.entries.get(&grading)
    }

    pub fn rank(&self, grading: i64) -> u64 {
        self.get(grading).map_or(0, |s| s.free_rank)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&i64, &Summand)> {
        self.entries.iter()
    }

    pub fn total_rank(&self) -> u64 {
        self.entries.values().map(|s| s.free_rank).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries.iter().map(|(&g, s)| if g % 2 == 0 { s.free_rank as i64 } else { -(s.free_rank as i64) }).sum()
    }

    pub fn restrict(&self, lo: i64, hi: i64) -> GradedGroup {
        GradedGroup { ring: self.ring, entries: self.entries.range(lo..=hi).map(|(&k, s)| (k, s.clone())).collect() }
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = match self.ring {
            Coefficients::Integers => "Z",
            Coefficients::Mod2 => "Z/2",
        };
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(g, s)| {
                let mut t = match s.free_rank {
                    0 => Vec::new(),
                    1 => vec![unit.to_string()],
                    r => vec![format!("({unit})^{r}")],
                };
                t.extend(s.torsion.iter().map(|n| format!("Z/{n}")));
                format!("{g}:{}", t.join("+"))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn hat_homology(c: &UComplex) -> GradedGroup {
    c.truncate(0, 0).homology()
}

/// Cycles representing the free summands of hat homology, per grading, as
/// coefficient vectors over the generators.
pub fn hat_homology_generators(c: &UComplex) -> BTreeMap<i64, Vec<Vec<i64>>> {
    let t = c.truncate(0, 0);
    let mut out = BTreeMap::new();
    let Some((lo, hi)) = t.grading_range() else {
        return out;
    };
    for g in lo..=hi {
        let basis = t.basis_in(g);
        let cycles: Vec<Vec<i64>> = match c.ring {
            Coefficients::Integers => integer_homology(&t, g).1,
            Coefficients::Mod2 => mod2_generators(&t, g),
        };
        let full: Vec<Vec<i64>> = cycles
            .into_iter()
            .map(|z| {
                let mut v = vec![0; t.len()];
                for (i, &b) in basis.iter().enumerate() {
                    v[b] = z[i];
                }
                v
            })
            .collect();
        if !full.is_empty() {
            out.insert(g, full);
        }
    }
    out
}

fn mod2_generators(t: &Truncation, g: i64) -> Vec<Vec<i64>> {
    let (_, cols, out) = t.block(g);
    let (_, _, inc) = t.block(g + 1);
    let inc = field_matrix(&inc, F2::from_int);
    let mut span: Vec<Vec<F2>> = (0..inc.cols()).map(|j| inc.column(j)).collect();
    let mut r = rank(&from_columns(cols.len(), &span));
    let mut gens = Vec::new();
    for z in kernel_basis(&field_matrix(&out, F2::from_int)) {
        span.push(z.clone());
        let r2 = rank(&from_columns(cols.len(), &span));
        if r2 > r {
            r = r2;
            gens.push(z.iter().map(|b| i64::from(b.0)).collect());
        } else {
            span.pop();
        }
    }
    gens
}

/// Homology of the truncated flavors at depth `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flavors {
    pub b: usize,
    /// `CF^- / U^b`, spanned by `[x, i]` with `-b <= i < 0`.
    pub minus: GradedGroup,
    /// Window `-b <= i < b` of the localization.
    pub infinity: GradedGroup,
    /// Kernel of `U^b` on `CF^+`, spanned by `[x, i]` with `0 <= i < b`.
    pub plus: GradedGroup,
    /// Whether the heads agree with depth `b + 1`.
    pub stabilized: bool,
}

impl Flavors {
    /// The three groups restricted to the gradings that do not move with `b`.
    pub fn heads(&self, window: (i64, i64)) -> [GradedGroup; 3] {
        [&self.minus, &self.infinity, &self.plus].map(|g| g.restrict(window.0, window.1))
    }
}

/// Gradings near the generators, where the truncation edges do not reach
/// once `b` is large enough.
pub fn head_window(c: &UComplex) -> (i64, i64) {
    let lo = c.gradings.iter().min().copied().unwrap_or(0);
    let hi = c.gradings.iter().max().copied().unwrap_or(0);
    (lo - 3, hi + 2)
}

fn raw_flavors(c: &UComplex, b: usize) -> [GradedGroup; 3] {
    let b = b as i64;
    [c.truncate(-b, -1).homology(), c.truncate(-b, b - 1).homology(), c.truncate(0, b - 1).homology()]
}

pub fn flavor_homologies(c: &UComplex, b: usize) -> Flavors {
    assert!(b >= 1, "truncation depth must be positive");
    let [minus, infinity, plus] = raw_flavors(c, b);
    let w = head_window(c);
    let next = raw_flavors(c, b + 1).map(|g| g.restrict(w.0, w.1));
    let here = [&minus, &infinity, &plus].map(|g| g.restrict(w.0, w.1));
    Flavors { b, stabilized: here == next, minus, infinity, plus }
}

/// Smallest depth at which the heads stabilize, up to `max_b`.
pub fn stable_depth(c: &UComplex, max_b: usize) -> Option<usize> {
    (1..=max_b).find(|&b| flavor_homologies(c, b).stabilized)
}

/// Rank bookkeeping for one short exact sequence `0 -> A -> B -> C -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRanks {
    /// Per grading: `(dim H(A), dim H(B), dim H(C), rank f, rank g)`.
    pub by_grading: BTreeMap<i64, [usize; 5]>,
}

impl SequenceRanks {
    /// The long exact sequence forces `dim H_n(B) = rk f_n + rk g_n` and
    /// `dim H_n(C) - rk g_n = dim H_{n-1}(A) - rk f_{n-1}`.
    pub fn exact(&self) -> bool {
        let get = |g: i64| self.by_grading.get(&g).copied().unwrap_or([0; 5]);
        self.by_grading.keys().flat_map(|&g| [g, g + 1]).all(|g| {
            let [_, hb, hc, f, gg] = get(g);
            let [ha1, _, _, f1, _] = get(g - 1);
            hb == f + gg && hc >= gg && ha1 >= f1 && hc - gg == ha1 - f1
        })
    }
}

fn sequence_ranks<F: Field>(
    a: &Truncation,
    b: &Truncation,
    c: &Truncation,
    f: &[(usize, usize, i64)],
    g: &[(usize, usize, i64)],
    conv: fn(i64) -> F,
) -> SequenceRanks {
    let mut by_grading = BTreeMap::new();
    let ranges = [a, b, c].into_iter().filter_map(|t| t.grading_range());
    let lo = ranges.clone().map(|r| r.0).min().unwrap_or(0);
    let hi = ranges.map(|r| r.1).max().unwrap_or(-1);
    for n in lo..=hi {
        by_grading.insert(
            n,
            [
                field_homology_dim(a, n, conv),
                field_homology_dim(b, n, conv),
                field_homology_dim(c, n, conv),
                induced_rank(a, b, f, n, conv),
                induced_rank(b, c, g, n, conv),
            ],
        );
    }
    SequenceRanks { by_grading }
}

fn to_q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Rank data of both truncated sequences:
/// `0 -> hat -> plus_b -> plus_{b-1} -> 0` (the second map is `U`) and
/// `0 -> minus_b -> window_b -> plus_b -> 0`. The hat complex is passed
/// separately so a mismatched one can be detected.
pub fn exactness_ranks(hat: &UComplex, c: &UComplex, b: usize) -> [SequenceRanks; 2] {
    assert!(b >= 2, "the U sequence needs depth at least 2");
    assert_eq!(hat.generator_count(), c.generator_count());
    let n = c.generator_count();
    let bi = b as i64;
    let hat_t = hat.truncate(0, 0);
    let plus = c.truncate(0, bi - 1);
    // `U` lowers grading by two, so its target is regraded to make it degree zero.
    let mut plus_short = c.truncate(0, bi - 2);
    plus_short.gradings.iter_mut().for_each(|g| *g += 2);
    let minus = c.truncate(-bi, -1);
    let window = c.truncate(-bi, bi - 1);
    let include_hat: Vec<_> = (0..n).map(|x| (x, x, 1)).collect();
    let times_u: Vec<_> = (n..b * n).map(|j| (j, j - n, 1)).collect();
    let include_minus: Vec<_> = (0..b * n).map(|j| (j, j, 1)).collect();
    let project_plus: Vec<_> = (0..b * n).map(|j| (b * n + j, j, 1)).collect();
    match c.ring {
        Coefficients::Integers => [
            sequence_ranks(&hat_t, &plus, &plus_short, &include_hat, &times_u, to_q),
            sequence_ranks(&minus, &window, &plus, &include_minus, &project_plus, to_q),
        ],
        Coefficients::Mod2 => [
            sequence_ranks(&hat_t, &plus, &plus_short, &include_hat, &times_u, F2::from_int),
            sequence_ranks(&minus, &window, &plus, &include_minus, &project_plus, F2::from_int),
        ],
    }
}

pub fn exactness_check(c: &UComplex, b: usize) -> bool {
    exactness_check_with_hat(&c.hat_part(), c, b)
}

pub fn exactness_check_with_hat(hat: &UComplex, c: &UComplex, b: usize) -> bool {
    exactness_ranks(hat, c, b.max(2)).iter().all(SequenceRanks::exact)
}

fn complex_from(names: &[&str], gradings: &[i64], arrows: &[(&str, &str, i64)], ring: Coefficients) -> UComplex {
    let spec = ComplexSpec {
        generators: names.iter().zip(gradings).map(|(n, &g)| GeneratorSpec { name: n.to_string(), grading: g }).collect(),
        differential: arrows
            .iter()
            .map(|&(f, t, c)| ArrowSpec { from: f.to_string(), to: t.to_string(), coeff: c, upower: 0 })
            .collect(),
        ring,
    };
    build_complex(&spec).expect("fixture complex is valid")
}

/// One generator in grading 0 and no differential.
pub fn single_generator_complex() -> UComplex {
    complex_from(&["x"], &[0], &[], Coefficients::Integers)
}

/// Three intersection points of a genus one diagram of the sphere, with
/// `d x1 = x2` and `d x3 = -x2`.
pub fn sphere_genus1_complex() -> UComplex {
    complex_from(&["x1", "x2", "x3"], &[0, -1, 0], &[("x1", "x2", 1), ("x3", "x2", -1)], Coefficients::Integers)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    ALessB,
    AGreaterB,
}

/// Nine generators `x_i y_j` of a genus two diagram of the sphere over `Z/2`.
pub fn sphere_genus2_complex(regime: Regime) -> UComplex {
    let g = [0, -1, 0];
    let mut names = Vec::new();
    let mut gradings = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            names.push(format!("x{i}y{j}"));
            gradings.push(g[i - 1] + g[j - 1]);
        }
    }
    let mut arrows = Vec::new();
    for k in 1..=3 {
        arrows.push((format!("x{k}y3"), format!("x{k}y2")));
        arrows.push((format!("x1y{k}"), format!("x2y{k}")));
        arrows.push((format!("x{k}y1"), format!("x{k}y2")));
        if regime == Regime::ALessB {
            arrows.push((format!("x3y{k}"), format!("x2y{k}")));
        }
    }
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let arrow_refs: Vec<(&str, &str, i64)> = arrows.iter().map(|(a, b)| (a.as_str(), b.as_str(), 1)).collect();
    complex_from(&name_refs, &gradings, &arrow_refs, Coefficients::Mod2)
}

impl fmt::Display for UComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.names.iter().enumerate() {
            let terms: Vec<String> = self
                .arrows
                .range((i, 0, 0)..=(i, usize::MAX, u32::MAX))
                .map(|(&(_, y, k), &c)| {
                    let u = match k {
                        0 => String::new(),
                        1 => "U ".to_string(),
                        k => format!("U^{k} "),
                    };
                    format!("{c} {u}{}", self.names[y])
                })
                .collect();
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            writeln!(f, "d {n} [{}] = {rhs}", self.gradings[i])?;
        }
        Ok(())
    }
}
