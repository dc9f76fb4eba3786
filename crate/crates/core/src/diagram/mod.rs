//! Oriented planar knot diagrams in PD form.
//!
//! A crossing `X(a,b,c,d)` lists its four edges counterclockwise starting at
//! the incoming under-strand, so the under-strand runs `a -> c`. Edges are
//! renumbered on construction so that edge `k` flows into edge `k+1`.

mod braid;
mod goeritz;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use braid::{braid_word_from_text, parse_braid, parse_braid_text, torus_braid};
pub use goeritz::{goeritz_matrix, goeritz_signature, signature_with, Goeritz};

/// 1-based edge label.
pub type EdgeId = usize;
pub type CrossingId = usize;
pub type RegionId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed crossing tuple: {0}")]
    MalformedTuple(String),
    #[error("edge label {0} does not occur exactly twice")]
    EdgeLabelNotTwice(i64),
    #[error("diagram is disconnected")]
    DisconnectedDiagram,
    #[error("diagram has more than one component")]
    MultiComponent,
    #[error("edge orientations are inconsistent at crossing {0}")]
    InconsistentOrientation(usize),
    #[error("tuples do not describe a planar diagram ({faces} faces for {crossings} crossings)")]
    NotPlanar { faces: usize, crossings: usize },
    #[error("braid letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i64, strands: usize },
    #[error("braid closure is a link with {0} components")]
    ClosureIsLink(usize),
    #[error("no crossing with index {0}")]
    UnknownCrossing(usize),
    #[error("no edge with label {0}")]
    UnknownEdge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Which side of an oriented edge a region lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// A slot position at a crossing: 0..4 counterclockwise from the incoming under-strand.
pub type Slot = usize;

/// A corner of a crossing; corner `s` sits between slots `s` and `s+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub crossing: CrossingId,
    pub corner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub id: RegionId,
    pub corners: Vec<Corner>,
    pub boundary: Vec<(EdgeId, Side)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanarDiagram {
    crossings: Vec<[EdgeId; 4]>,
    /// `true` when the over-strand runs from slot b to slot d.
    over_bd: Vec<bool>,
}

/// Face structure computed once per diagram.
#[derive(Clone, Debug)]
pub struct Faces {
    pub regions: Vec<Region>,
    /// Region containing each corner, indexed `[crossing][corner]`.
    pub corner_region: Vec<[RegionId; 4]>,
    pub unbounded: RegionId,
}

impl Faces {
    pub fn region_left_of(&self, d: &PlanarDiagram, e: EdgeId) -> RegionId {
        let (x, s) = d.edge_tail(e);
        self.corner_region[x][s]
    }

    pub fn region_right_of(&self, d: &PlanarDiagram, e: EdgeId) -> RegionId {
        let (x, s) = d.edge_head(e);
        self.corner_region[x][s]
    }

    /// Two-colouring with the unbounded region white.
    pub fn checkerboard(&self) -> Vec<Color> {
        let mut color: Vec<Option<Color>> = vec![None; self.regions.len()];
        if self.regions.is_empty() {
            return Vec::new();
        }
        color[self.unbounded] = Some(Color::White);
        let mut stack = vec![self.unbounded];
        while let Some(r) = stack.pop() {
            let c = color[r].expect("coloured");
            for corner in &self.regions[r].corners {
                for nb in [(corner.corner + 1) % 4, (corner.corner + 3) % 4] {
                    let other = self.corner_region[corner.crossing][nb];
                    match color[other] {
                        None => {
                            color[other] = Some(c.other());
                            stack.push(other);
                        }
                        Some(o) => assert_ne!(o, c, "diagram is not checkerboard colourable"),
                    }
                }
            }
        }
        color.into_iter().map(|c| c.unwrap_or(Color::White)).collect()
    }
}

fn other_slot(s: Slot) -> Slot {
    (s + 2) % 4
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        PlanarDiagram { crossings: Vec::new(), over_bd: Vec::new() }
    }

    /// Build from raw tuples with arbitrary integer labels.
    pub fn from_tuples(tuples: &[[i64; 4]]) -> Result<Self, DiagramError> {
        if tuples.is_empty() {
            return Ok(Self::unknot());
        }
        let n = tuples.len();
        let mut occ: BTreeMap<i64, Vec<(usize, Slot)>> = BTreeMap::new();
        for (x, t) in tuples.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                occ.entry(l).or_default().push((x, s));
            }
        }
        if let Some((&l, _)) = occ.iter().find(|(_, v)| v.len() != 2) {
            return Err(DiagramError::EdgeLabelNotTwice(l));
        }
        let partner = |x: usize, s: Slot| -> (usize, Slot) {
            let v = &occ[&tuples[x][s]];
            if v[0] == (x, s) {
                v[1]
            } else {
                v[0]
            }
        };

        // Connectivity of the underlying 4-valent graph.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for s in 0..4 {
                let (y, _) = partner(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|v| !v) {
            return Err(DiagramError::DisconnectedDiagram);
        }

        // Orient by walking from an incoming under-slot.
        let mut incoming: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
        let mut order: Vec<i64> = Vec::with_capacity(2 * n);
        let (mut x, mut s) = (0usize, 0usize);
        loop {
            if incoming[x][s] == Some(true) {
                break;
            }
            if incoming[x][s] == Some(false) || s == 2 {
                return Err(DiagramError::InconsistentOrientation(x));
            }
            incoming[x][s] = Some(true);
            let out = other_slot(s);
            if incoming[x][out].is_some() || out == 0 {
                return Err(DiagramError::InconsistentOrientation(x));
            }
            incoming[x][out] = Some(false);
            order.push(tuples[x][out]);
            (x, s) = partner(x, out);
        }
        if order.len() != 2 * n {
            return Err(DiagramError::MultiComponent);
        }
        let start = order.iter().enumerate().min_by_key(|(_, l)| **l).map(|(i, _)| i).unwrap();
        let relabel: HashMap<i64, EdgeId> =
            (0..2 * n).map(|k| (order[(start + k) % (2 * n)], k + 1)).collect();
        let crossings = tuples.iter().map(|t| t.map(|l| relabel[&l])).collect();
        let over_bd = incoming.iter().map(|inc| inc[1] == Some(true)).collect();
        let d = PlanarDiagram { crossings, over_bd };
        let faces = d.faces().regions.len();
        if faces != n + 2 {
            return Err(DiagramError::NotPlanar { faces, crossings: n });
        }
        Ok(d)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn is_unknot_sentinel(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn crossing(&self, x: CrossingId) -> [EdgeId; 4] {
        self.crossings[x]
    }

    pub fn crossings(&self) -> &[[EdgeId; 4]] {
        &self.crossings
    }

    pub fn crossing_sign(&self, x: CrossingId) -> Result<Sign, DiagramError> {
        match self.over_bd.get(x) {
            None => Err(DiagramError::UnknownCrossing(x)),
            Some(true) => Ok(Sign::Negative),
            Some(false) => Ok(Sign::Positive),
        }
    }

    pub fn sign(&self, x: CrossingId) -> Sign {
        self.crossing_sign(x).expect("crossing index in range")
    }

    pub fn writhe(&self) -> i64 {
        (0..self.crossing_count()).map(|x| self.sign(x).value()).sum()
    }

    /// Whether the edge at slot `s` of crossing `x` points into the crossing.
    pub fn slot_incoming(&self, x: CrossingId, s: Slot) -> bool {
        match s {
            0 => true,
            2 => false,
            1 => self.over_bd[x],
            _ => !self.over_bd[x],
        }
    }

    fn find_slot(&self, e: EdgeId, incoming: bool) -> (CrossingId, Slot) {
        for (x, t) in self.crossings.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                if l == e && self.slot_incoming(x, s) == incoming {
                    return (x, s);
                }
            }
        }
        panic!("edge {e} missing from diagram");
    }

    /// Crossing and slot where edge `e` ends.
    pub fn edge_head(&self, e: EdgeId) -> (CrossingId, Slot) {
        self.find_slot(e, true)
    }

    /// Crossing and slot where edge `e` starts.
    pub fn edge_tail(&self, e: EdgeId) -> (CrossingId, Slot) {
        self.find_slot(e, false)
    }

    fn half_edge_partner(&self) -> Vec<[(CrossingId, Slot); 4]> {
        let n = self.crossings.len();
        let mut ends: Vec<Vec<(CrossingId, Slot)>> = vec![Vec::new(); 2 * n + 1];
        for (x, t) in self.crossings.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                ends[l].push((x, s));
            }
        }
        (0..n)
            .map(|x| {
                std::array::from_fn(|s| {
                    let v = &ends[self.crossings[x][s]];
                    if v[0] == (x, s) {
                        v[1]
                    } else {
                        v[0]
                    }
                })
            })
            .collect()
    }

    /// Faces of the diagram on the sphere. The unbounded region is the one on
    /// the right of edge 1.
    pub fn faces(&self) -> Faces {
        let n = self.crossings.len();
        if n == 0 {
            let regions = (0..2)
                .map(|id| Region { id, corners: Vec::new(), boundary: Vec::new() })
                .collect();
            return Faces { regions, corner_region: Vec::new(), unbounded: 0 };
        }
        let partner = self.half_edge_partner();
        let mut corner_region = vec![[usize::MAX; 4]; n];
        let mut regions = Vec::new();
        for x0 in 0..n {
            for s0 in 0..4 {
                if corner_region[x0][s0] != usize::MAX {
                    continue;
                }
                let id = regions.len();
                let mut corners = Vec::new();
                let mut boundary = Vec::new();
                let (mut x, mut s) = (x0, s0);
                loop {
                    corner_region[x][s] = id;
                    corners.push(Corner { crossing: x, corner: s });
                    let side = if self.slot_incoming(x, s) { Side::Right } else { Side::Left };
                    boundary.push((self.crossings[x][s], side));
                    let (y, t) = partner[x][s];
                    (x, s) = (y, (t + 3) % 4);
                    if (x, s) == (x0, s0) {
                        break;
                    }
                }
                regions.push(Region { id, corners, boundary });
            }
        }
        let (hx, hs) = self.edge_head(1);
        let unbounded = corner_region[hx][hs];
        Faces { regions, corner_region, unbounded }
    }

    /// Whether over and under passages alternate along the knot.
    pub fn is_alternating(&self) -> bool {
        let m = self.edge_count();
        if m == 0 {
            return true;
        }
        let passes: Vec<bool> = (1..=m)
            .map(|e| {
                let (_, s) = self.edge_head(e);
                s == 0
            })
            .collect();
        (0..m).all(|i| passes[i] != passes[(i + 1) % m])
    }

    /// No crossing meets the same region in two of its corners.
    pub fn is_reduced(&self) -> bool {
        let f = self.faces();
        f.corner_region.iter().all(|c| c[0] != c[2] && c[1] != c[3])
    }

    /// Reflection through the projection plane: every crossing switches.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.over_bd)
            .map(|(&[a, b, c, d], &bd)| if bd { [b, c, d, a] } else { [d, a, b, c] })
            .collect();
        let over_bd = self.over_bd.iter().map(|b| !b).collect();
        PlanarDiagram { crossings, over_bd }
    }

    /// Slot of crossing `x` in the mirrored diagram corresponding to slot `s` here.
    pub fn mirror_slot(&self, x: CrossingId, s: Slot) -> Slot {
        if self.over_bd[x] {
            (s + 3) % 4
        } else {
            (s + 1) % 4
        }
    }

    /// Connected sum, splicing edge `e1` of `self` with edge `e2` of `other`.
    pub fn connected_sum_at(&self, other: &Self, e1: EdgeId, e2: EdgeId) -> Result<Self, DiagramError> {
        if self.is_unknot_sentinel() {
            return Ok(other.clone());
        }
        if other.is_unknot_sentinel() {
            return Ok(self.clone());
        }
        if e1 == 0 || e1 > self.edge_count() {
            return Err(DiagramError::UnknownEdge(e1));
        }
        if e2 == 0 || e2 > other.edge_count() {
            return Err(DiagramError::UnknownEdge(e2));
        }
        let off = self.edge_count() as i64;
        let mut tuples: Vec<[i64; 4]> = self.crossings.iter().map(|t| t.map(|l| l as i64)).collect();
        tuples.extend(other.crossings.iter().map(|t| t.map(|l| l as i64 + off)));
        let (hx1, hs1) = self.edge_head(e1);
        let (hx2, hs2) = other.edge_head(e2);
        let hx2 = hx2 + self.crossing_count();
        tuples[hx1][hs1] = e2 as i64 + off;
        tuples[hx2][hs2] = e1 as i64;
        Self::from_tuples(&tuples)
    }

    pub fn connected_sum(&self, other: &Self) -> Result<Self, DiagramError> {
        self.connected_sum_at(other, 1, 1)
    }

    pub fn to_tuples(&self) -> Vec<[i64; 4]> {
        self.crossings.iter().map(|t| t.map(|l| l as i64)).collect()
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .crossings
            .iter()
            .map(|[a, b, c, d]| format!("X({a},{b},{c},{d})"))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Parse PD text. Accepts `X(1,4,2,5), ...`, `PD[X[1,4,2,5], ...]` and
/// nested JSON style `[[1,4,2,5], ...]`. Empty input is the unknot.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut tuples = Vec::new();
    let mut current: Option<String> = None;
    for ch in text.chars() {
        match ch {
            '(' | '[' => current = Some(String::new()),
            ')' | ']' => {
                if let Some(body) = current.take() {
                    if body.trim().is_empty() {
                        continue;
                    }
                    let nums: Result<Vec<i64>, _> = body.split(',').map(|p| p.trim().parse::<i64>()).collect();
                    match nums {
                        Ok(v) if v.len() == 4 => tuples.push([v[0], v[1], v[2], v[3]]),
                        _ => return Err(DiagramError::MalformedTuple(body)),
                    }
                }
            }
            c if c.is_ascii_alphabetic() => match &current {
                Some(body) if !body.trim().is_empty() => {
                    return Err(DiagramError::MalformedTuple(format!("{body}{c}")))
                }
                _ => current = None,
            },
            _ => {
                if let Some(body) = current.as_mut() {
                    if !(ch.is_ascii_digit() || ch == ',' || ch == '-' || ch.is_whitespace()) {
                        return Err(DiagramError::MalformedTuple(format!("{body}{ch}")));
                    }
                    body.push(ch);
                } else if !(ch.is_whitespace() || ch == ',' || ch.is_ascii_alphabetic()) {
                    return Err(DiagramError::MalformedTuple(ch.to_string()));
                }
            }
        }
    }
    if let Some(body) = current {
        if !body.trim().is_empty() {
            return Err(DiagramError::MalformedTuple(body));
        }
    }
    PlanarDiagram::from_tuples(&tuples)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> PlanarDiagram {
        parse_pd("X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)").unwrap()
    }

    #[test]
    fn right_handed_trefoil_is_positive() {
        let d = parse_pd("X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)").unwrap();
        assert_eq!(d.writhe(), 3);
        assert!((0..3).all(|x| d.crossing_sign(x) == Ok(Sign::Positive)));
        assert_eq!(d.crossing_sign(7), Err(DiagramError::UnknownCrossing(7)));
    }

    #[test]
    fn knot_theory_trefoil_is_left_handed() {
        assert_eq!(trefoil().writhe(), -3);
    }

    #[test]
    fn parse_formats_agree() {
        let a = parse_pd("X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)").unwrap();
        let b = parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]").unwrap();
        let c = parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(parse_pd("").unwrap().is_unknot_sentinel());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_pd("X(1,2,3)"), Err(DiagramError::MalformedTuple(_))));
        assert!(matches!(parse_pd("X(1,4,2,5), X(3,6,4,1), X(5,2,6,7)"), Err(DiagramError::EdgeLabelNotTwice(_))));
        assert_eq!(
            parse_pd("X(1,4,2,3), X(3,6,4,5), X(5,2,6,1), X(7,10,8,9), X(9,12,10,11), X(11,8,12,7)"),
            Err(DiagramError::DisconnectedDiagram)
        );
        // Hopf link.
        assert_eq!(parse_pd("X(1,3,2,4), X(3,1,4,2)"), Err(DiagramError::MultiComponent));
        // Each under-pass pair (2k-1, 2k) closes up through an over-pass: three components.
        assert_eq!(parse_pd("X(1,4,2,3), X(3,6,4,5), X(5,2,6,1)"), Err(DiagramError::MultiComponent));
        assert_eq!(parse_pd("X(1,4,2,3)"), Err(DiagramError::EdgeLabelNotTwice(1)));
    }

    #[test]
    fn relabelling_is_traversal_order() {
        let d = parse_pd("X(11,15,12,14), X(13,11,14,16), X(15,13,16,12)").unwrap();
        assert_eq!(d, parse_pd("X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)").unwrap());
        for e in 1..=d.edge_count() {
            let (x, s) = d.edge_head(e);
            let next = d.crossing(x)[(s + 2) % 4];
            assert_eq!(next, e % d.edge_count() + 1);
        }
    }

    #[test]
    fn faces_of_trefoil() {
        let d = trefoil();
        let f = d.faces();
        assert_eq!(f.regions.len(), 5);
        let mut sizes: Vec<usize> = f.regions.iter().map(|r| r.corners.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3]);
        let colors = f.checkerboard();
        assert_eq!(colors.iter().filter(|c| **c == Color::White).count() + colors.iter().filter(|c| **c == Color::Black).count(), 5);
        // Every edge has distinct regions on its two sides.
        for e in 1..=6 {
            assert_ne!(f.region_left_of(&d, e), f.region_right_of(&d, e));
        }
    }

    #[test]
    fn mirror_is_an_involution() {
        let d = trefoil();
        let m = d.mirror();
        assert_eq!(m.writhe(), 3);
        assert_eq!(m.mirror(), d);
        assert_eq!(m.faces().regions.len(), 5);
    }

    #[test]
    fn alternating_and_reduced() {
        let d = trefoil();
        assert!(d.is_alternating());
        assert!(d.is_reduced());
        let kink = parse_pd("X(1,1,2,2)");
        assert!(kink.is_ok());
        assert!(!kink.unwrap().is_reduced());
    }

    #[test]
    fn connected_sum_counts() {
        let t = trefoil();
        let s = t.connected_sum(&t).unwrap();
        assert_eq!(s.crossing_count(), 6);
        assert_eq!(s.writhe(), -6);
        assert_eq!(s.faces().regions.len(), 8);
        assert_eq!(t.connected_sum(&PlanarDiagram::unknot()).unwrap(), t);
    }
}
