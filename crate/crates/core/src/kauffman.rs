//! Kauffman states of a decorated projection and the Alexander polynomial
//! as a state sum.
//!
//! A decorated projection fixes a marked edge on the boundary of the
//! unbounded region `A`; `B` is the region across that edge. A state assigns
//! to every crossing one of its corners so that every region other than
//! `A` and `B` is used exactly once.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Color, CrossingId, EdgeId, Faces, PlanarDiagram, RegionId, Sign};
use crate::linalg::{det_bareiss, Matrix};
use crate::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KauffmanError {
    #[error("edge {0} does not lie on the boundary of the unbounded region")]
    EdgeNotOnOuterFace(EdgeId),
    #[error("no region with index {0}")]
    UnknownRegion(RegionId),
    #[error("Alexander grading sums to a half-integer ({0}/2)")]
    NonIntegralTotal(i64),
}

#[derive(Clone, Debug)]
pub struct DecoratedProjection {
    pub diagram: PlanarDiagram,
    pub faces: Faces,
    pub marked_edge: Option<EdgeId>,
    pub region_a: RegionId,
    pub region_b: RegionId,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KauffmanState {
    /// Corner chosen at each crossing.
    pub corners: Vec<usize>,
    /// Region containing that corner.
    pub regions: Vec<RegionId>,
}

/// Decorate with the default unbounded region. `edge = None` picks the
/// lowest labelled edge on its boundary.
pub fn decorate(d: &PlanarDiagram, edge: Option<EdgeId>) -> Result<DecoratedProjection, KauffmanError> {
    let faces = d.faces();
    let outer = faces.unbounded;
    decorate_inner(d, faces, outer, edge)
}

/// Decorate with an explicit choice of unbounded region.
pub fn decorate_with_outer(
    d: &PlanarDiagram,
    outer: RegionId,
    edge: Option<EdgeId>,
) -> Result<DecoratedProjection, KauffmanError> {
    let faces = d.faces();
    if outer >= faces.regions.len() {
        return Err(KauffmanError::UnknownRegion(outer));
    }
    decorate_inner(d, faces, outer, edge)
}

fn decorate_inner(
    d: &PlanarDiagram,
    faces: Faces,
    outer: RegionId,
    edge: Option<EdgeId>,
) -> Result<DecoratedProjection, KauffmanError> {
    if d.is_unknot_sentinel() {
        if let Some(e) = edge {
            return Err(KauffmanError::EdgeNotOnOuterFace(e));
        }
        return Ok(DecoratedProjection { diagram: d.clone(), faces, marked_edge: None, region_a: outer, region_b: 1 - outer });
    }
    let e = match edge {
        Some(e) => e,
        None => outer_edges_of(d, &faces, outer)[0],
    };
    if e == 0 || e > d.edge_count() {
        return Err(KauffmanError::EdgeNotOnOuterFace(e));
    }
    let (l, r) = (faces.region_left_of(d, e), faces.region_right_of(d, e));
    let b = if l == outer {
        r
    } else if r == outer {
        l
    } else {
        return Err(KauffmanError::EdgeNotOnOuterFace(e));
    };
    Ok(DecoratedProjection { diagram: d.clone(), faces, marked_edge: Some(e), region_a: outer, region_b: b })
}

/// Edges on the boundary of region `r`, sorted and deduplicated.
pub fn outer_edges_of(d: &PlanarDiagram, faces: &Faces, r: RegionId) -> Vec<EdgeId> {
    let _ = d;
    let mut v: Vec<EdgeId> = faces.regions[r].boundary.iter().map(|(e, _)| *e).collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl DecoratedProjection {
    /// Corners of crossing `x` usable in a state, with their regions.
    fn options(&self, x: CrossingId) -> Vec<(usize, RegionId)> {
        (0..4)
            .map(|s| (s, self.faces.corner_region[x][s]))
            .filter(|&(_, r)| r != self.region_a && r != self.region_b)
            .collect()
    }

    /// All Kauffman states in lexicographic order of their corner vectors.
    pub fn states(&self) -> Vec<KauffmanState> {
        let n = self.diagram.crossing_count();
        if n == 0 {
            return vec![KauffmanState { corners: Vec::new(), regions: Vec::new() }];
        }
        let options: Vec<Vec<(usize, RegionId)>> = (0..n).map(|x| self.options(x)).collect();
        let mut order: Vec<CrossingId> = (0..n).collect();
        order.sort_by_key(|&x| options[x].len());
        let mut used = vec![false; self.faces.regions.len()];
        let mut corners = vec![0usize; n];
        let mut out = Vec::new();
        fn go(
            k: usize,
            order: &[CrossingId],
            options: &[Vec<(usize, RegionId)>],
            used: &mut [bool],
            corners: &mut [usize],
            faces: &Faces,
            out: &mut Vec<KauffmanState>,
        ) {
            if k == order.len() {
                let regions = corners.iter().enumerate().map(|(x, &s)| faces.corner_region[x][s]).collect();
                out.push(KauffmanState { corners: corners.to_vec(), regions });
                return;
            }
            let x = order[k];
            for &(s, r) in &options[x] {
                if used[r] {
                    continue;
                }
                used[r] = true;
                corners[x] = s;
                go(k + 1, order, options, used, corners, faces, out);
                used[r] = false;
            }
        }
        go(0, &order, &options, &mut used, &mut corners, &self.faces, &mut out);
        out.sort();
        out
    }

    /// Twice the local Alexander contribution of corner `s` at crossing `x`.
    pub fn local_alexander_doubled(&self, x: CrossingId, s: usize) -> i64 {
        let (towards, away) = quadrant_roles(self.diagram.sign(x));
        let eps = self.diagram.sign(x).value();
        if s == towards {
            eps
        } else if s == away {
            -eps
        } else {
            0
        }
    }

    pub fn local_maslov(&self, x: CrossingId, s: usize) -> i64 {
        let (_, away) = quadrant_roles(self.diagram.sign(x));
        if s == away {
            -self.diagram.sign(x).value()
        } else {
            0
        }
    }

    pub fn alexander_grading(&self, st: &KauffmanState) -> Result<i64, KauffmanError> {
        let doubled: i64 = st.corners.iter().enumerate().map(|(x, &s)| self.local_alexander_doubled(x, s)).sum();
        if doubled % 2 != 0 {
            return Err(KauffmanError::NonIntegralTotal(doubled));
        }
        Ok(doubled / 2)
    }

    pub fn maslov_grading(&self, st: &KauffmanState) -> i64 {
        st.corners.iter().enumerate().map(|(x, &s)| self.local_maslov(x, s)).sum()
    }

    /// `(alexander, maslov)` for every state, in state order.
    pub fn gradings(&self) -> Result<Vec<(i64, i64)>, KauffmanError> {
        self.states()
            .iter()
            .map(|st| Ok((self.alexander_grading(st)?, self.maslov_grading(st))))
            .collect()
    }

    /// `sum (-1)^M T^A` over states, normalised so the value at `T = 1` is positive.
    pub fn state_sum(&self) -> Result<Polynomial, KauffmanError> {
        let terms = self.gradings()?.into_iter().map(|(a, m)| (a, if m.rem_euclid(2) == 0 { 1 } else { -1 }));
        let p = Polynomial::from_terms(terms);
        Ok(if p.eval_i64(1).unwrap_or(0) < 0 { -p } else { p })
    }
}

/// `(towards, away)` corners: bounded by both incoming, resp. both outgoing edges.
pub fn quadrant_roles(sign: Sign) -> (usize, usize) {
    match sign {
        Sign::Positive => (3, 1),
        Sign::Negative => (0, 2),
    }
}

pub fn kauffman_states(dp: &DecoratedProjection) -> Vec<KauffmanState> {
    dp.states()
}

pub fn state_sum_alexander(dp: &DecoratedProjection) -> Result<Polynomial, KauffmanError> {
    dp.state_sum()
}

/// Alexander polynomial of a diagram from its default decoration.
pub fn alexander(d: &PlanarDiagram) -> Result<Polynomial, KauffmanError> {
    decorate(d, None)?.state_sum()
}

/// `|Delta(-1)|`.
pub fn determinant(d: &PlanarDiagram) -> Result<u64, KauffmanError> {
    let p = alexander(d)?;
    Ok(p.eval_i64(-1).expect("units evaluate").unsigned_abs())
}

/// Tait graph on the regions of colour `color`: one edge per crossing joining
/// its two corners of that colour. Loops are kept.
pub fn tait_graph(d: &PlanarDiagram, color: Color) -> (usize, Vec<(usize, usize)>) {
    let faces = d.faces();
    if d.is_unknot_sentinel() {
        return (1, Vec::new());
    }
    let colors = faces.checkerboard();
    let verts: Vec<RegionId> = (0..faces.regions.len()).filter(|&r| colors[r] == color).collect();
    let idx = |r: RegionId| verts.iter().position(|&v| v == r).expect("region of colour");
    let edges = (0..d.crossing_count())
        .map(|x| {
            let s = if colors[faces.corner_region[x][0]] == color { 0 } else { 1 };
            (idx(faces.corner_region[x][s]), idx(faces.corner_region[x][s + 2]))
        })
        .collect();
    (verts.len(), edges)
}

/// Number of spanning trees by the matrix-tree theorem.
pub fn spanning_tree_count(vertices: usize, edges: &[(usize, usize)]) -> u128 {
    if vertices <= 1 {
        return 1;
    }
    let mut lap = Matrix::<BigInt>::zeros(vertices, vertices);
    for &(u, v) in edges {
        if u == v {
            continue;
        }
        lap[(u, u)] += 1;
        lap[(v, v)] += 1;
        lap[(u, v)] -= 1;
        lap[(v, u)] -= 1;
    }
    let keep: Vec<usize> = (1..vertices).collect();
    det_bareiss(&lap.submatrix(&keep, &keep)).to_u128().expect("tree count fits")
}

pub fn black_graph_trees(d: &PlanarDiagram) -> u128 {
    let (v, e) = tait_graph(d, Color::Black);
    spanning_tree_count(v, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_braid, parse_pd};

    fn rh_trefoil() -> PlanarDiagram {
        parse_pd("X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)").unwrap()
    }

    #[test]
    fn trefoil_state_gradings() {
        let dp = decorate(&rh_trefoil(), None).unwrap();
        let mut g = dp.gradings().unwrap();
        g.sort();
        assert_eq!(g, vec![(-1, -2), (0, -1), (1, 0)]);
        assert_eq!(dp.state_sum().unwrap().to_string(), "T - 1 + T^-1");
    }

    #[test]
    fn braid_trefoil_matches() {
        let dp = decorate(&parse_braid(&[1, 1, 1], 2).unwrap(), None).unwrap();
        let mut g = dp.gradings().unwrap();
        g.sort();
        assert_eq!(g, vec![(-1, -2), (0, -1), (1, 0)]);
    }

    #[test]
    fn figure_eight_gradings() {
        let d = parse_pd("X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)").unwrap();
        let dp = decorate(&d, None).unwrap();
        let mut g = dp.gradings().unwrap();
        g.sort();
        assert_eq!(g, vec![(-1, -1), (0, 0), (0, 0), (0, 0), (1, 1)]);
        assert_eq!(dp.state_sum().unwrap().to_string(), "-T + 3 - T^-1");
    }

    #[test]
    fn unknot_sentinel() {
        let dp = decorate(&PlanarDiagram::unknot(), None).unwrap();
        assert_eq!(dp.states().len(), 1);
        assert_eq!(dp.state_sum().unwrap(), Polynomial::one());
        assert_eq!(determinant(&PlanarDiagram::unknot()).unwrap(), 1);
    }

    #[test]
    fn marked_edge_must_touch_outer_region() {
        let d = rh_trefoil();
        let faces = d.faces();
        let on = outer_edges_of(&d, &faces, faces.unbounded);
        for e in 1..=6 {
            let r = decorate(&d, Some(e));
            if on.contains(&e) {
                assert!(r.is_ok());
            } else {
                assert_eq!(r.unwrap_err(), KauffmanError::EdgeNotOnOuterFace(e));
            }
        }
    }

    #[test]
    fn tree_counts() {
        let d = rh_trefoil();
        assert_eq!(black_graph_trees(&d), 3);
        let (v, e) = tait_graph(&d, Color::White);
        assert_eq!(spanning_tree_count(v, &e), 3);
        assert_eq!(determinant(&d).unwrap(), 3);
    }
}
