//! Conway polynomial by skein recursion, converted to the Alexander polynomial.
//!
//! At the first crossing met from below along the traversal, the skein
//! relation `C(L+) - C(L-) = z C(L0)` trades the diagram for its switch and
//! its oriented smoothing. Diagrams met from above at every crossing are
//! unlinks. Links occur transiently, so this module carries its own
//! multi-component diagram type.

use std::collections::HashMap;

use thiserror::Error;

use crate::diagram::PlanarDiagram;
use crate::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConwayError {
    #[error("recursion budget exceeded: {0}")]
    RecursionBudgetExceeded(String),
}

#[derive(Clone, Copy, Debug)]
pub struct ConwayBudget {
    pub max_crossings: usize,
    pub max_nodes: usize,
}

impl Default for ConwayBudget {
    fn default() -> Self {
        ConwayBudget { max_crossings: 40, max_nodes: 20_000_000 }
    }
}

/// Canonical form of a diagram: sorted crossings and a loop/component tag.
type Key = (Vec<(u32, u32, u32, u32, bool)>, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    over_bd: Vec<bool>,
    free_loops: u32,
}

impl LinkDiagram {
    fn from_knot(d: &PlanarDiagram) -> Self {
        let crossings = d.crossings().iter().map(|t| t.map(|l| l as u32)).collect();
        let over_bd = (0..d.crossing_count()).map(|x| d.sign(x).value() < 0).collect();
        let free_loops = u32::from(d.is_unknot_sentinel());
        LinkDiagram { crossings, over_bd, free_loops }
    }

    fn incoming(&self, x: usize, s: usize) -> bool {
        match s {
            0 => true,
            2 => false,
            1 => self.over_bd[x],
            _ => !self.over_bd[x],
        }
    }

    fn positive(&self, x: usize) -> bool {
        !self.over_bd[x]
    }

    /// Relabel so each component's edges are consecutive along its
    /// orientation, components ordered by their smallest old label.
    /// Returns the number of components carrying crossings.
    fn normalize(&mut self) -> usize {
        let maxl = self.crossings.iter().flatten().copied().max().unwrap_or(0) as usize;
        let mut head = vec![(usize::MAX, 0usize); maxl + 1];
        for x in 0..self.crossings.len() {
            for s in 0..4 {
                if self.incoming(x, s) {
                    head[self.crossings[x][s] as usize] = (x, s);
                }
            }
        }
        let mut labels: Vec<u32> = self.crossings.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let mut new = vec![0u32; maxl + 1];
        let mut next = 1u32;
        let mut comps = 0;
        for &l in &labels {
            if new[l as usize] != 0 {
                continue;
            }
            comps += 1;
            let mut e = l;
            while new[e as usize] == 0 {
                new[e as usize] = next;
                next += 1;
                let (x, s) = head[e as usize];
                e = self.crossings[x][(s + 2) % 4];
            }
        }
        for t in &mut self.crossings {
            for l in t.iter_mut() {
                *l = new[*l as usize];
            }
        }
        comps
    }

    fn switch(&self, x: usize) -> Self {
        let mut out = self.clone();
        let [a, b, c, d] = self.crossings[x];
        out.crossings[x] = if self.over_bd[x] { [b, c, d, a] } else { [d, a, b, c] };
        out.over_bd[x] = !self.over_bd[x];
        out
    }

    fn rename(&mut self, from: u32, to: u32) {
        for t in &mut self.crossings {
            for l in t.iter_mut() {
                if *l == from {
                    *l = to;
                }
            }
        }
    }

    fn remove(&mut self, x: usize) {
        self.crossings.remove(x);
        self.over_bd.remove(x);
    }

    /// Oriented resolution of crossing `x`.
    fn smooth(&self, x: usize) -> Self {
        let mut out = self.clone();
        let [a, b, c, d] = self.crossings[x];
        // (incoming, outgoing) pairs joined by the smoothing.
        let pairs = if self.positive(x) { [(a, b), (d, c)] } else { [(a, d), (b, c)] };
        out.remove(x);
        for (i, o) in pairs {
            if i == o {
                out.free_loops += 1;
            } else {
                out.rename(o, i);
            }
        }
        out.normalize();
        out
    }

    /// Remove one monogon crossing if present.
    fn remove_kink(&mut self) -> bool {
        for x in 0..self.crossings.len() {
            let t = self.crossings[x];
            for s in 0..4 {
                if t[s] != t[(s + 1) % 4] {
                    continue;
                }
                let (f, g) = (t[(s + 2) % 4], t[(s + 3) % 4]);
                self.remove(x);
                if f == g {
                    self.free_loops += 1;
                } else {
                    self.rename(g, f);
                }
                self.normalize();
                return true;
            }
        }
        false
    }

    /// First crossing reached along its under-strand before its over-strand.
    fn first_bad(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for (x, t) in self.crossings.iter().enumerate() {
            let under = t[0];
            let over = if self.over_bd[x] { t[1] } else { t[3] };
            if under < over && best.is_none_or(|(l, _)| under < l) {
                best = Some((under, x));
            }
        }
        best.map(|(_, x)| x)
    }

    fn key(&self, comps: usize) -> Key {
        let m = 2 * self.crossings.len() as u32;
        let encode = |shift: u32| {
            let mut v: Vec<(u32, u32, u32, u32, bool)> = self
                .crossings
                .iter()
                .zip(&self.over_bd)
                .map(|(t, &o)| {
                    let r = |l: u32| (l - 1 + m - shift) % m + 1;
                    (r(t[0]), r(t[1]), r(t[2]), r(t[3]), o)
                })
                .collect();
            v.sort_unstable();
            v
        };
        if comps == 1 {
            let best = (0..m).map(encode).min().unwrap_or_default();
            (best, self.free_loops)
        } else {
            (encode(0), self.free_loops + 1000 * comps as u32)
        }
    }
}

struct Recursion {
    memo: HashMap<Key, Polynomial>,
    nodes: usize,
    budget: ConwayBudget,
}

impl Recursion {
    fn eval(&mut self, mut d: LinkDiagram) -> Result<Polynomial, ConwayError> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(ConwayError::RecursionBudgetExceeded(format!("more than {} skein nodes", self.budget.max_nodes)));
        }
        while d.remove_kink() {}
        if d.crossings.is_empty() {
            return Ok(if d.free_loops == 1 { Polynomial::one() } else { Polynomial::zero() });
        }
        if d.free_loops > 0 {
            return Ok(Polynomial::zero());
        }
        let comps = d.normalize();
        let key = d.key(comps);
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        let value = match d.first_bad() {
            None => {
                if comps == 1 {
                    Polynomial::one()
                } else {
                    Polynomial::zero()
                }
            }
            Some(x) => {
                let eps = if d.positive(x) { 1 } else { -1 };
                let sw = self.eval(d.switch(x))?;
                let sm = self.eval(d.smooth(x))?;
                sw + sm.shift(1).scale(&eps)
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

/// Conway polynomial in `z` of a knot diagram.
pub fn conway_polynomial(d: &PlanarDiagram, budget: ConwayBudget) -> Result<Polynomial, ConwayError> {
    if d.crossing_count() > budget.max_crossings {
        return Err(ConwayError::RecursionBudgetExceeded(format!(
            "{} crossings exceeds the bound of {}",
            d.crossing_count(),
            budget.max_crossings
        )));
    }
    let mut r = Recursion { memo: HashMap::new(), nodes: 0, budget };
    r.eval(LinkDiagram::from_knot(d))
}

/// Substitute `z^2 = T - 2 + T^-1`. Knots only have even powers of `z`.
pub fn conway_to_alexander(c: &Polynomial) -> Polynomial {
    let z2 = Polynomial::from_terms([(1, 1), (0, -2), (-1, 1)]);
    let mut acc = Polynomial::zero();
    for (e, coef) in c.terms() {
        assert!(e % 2 == 0, "odd power of z in a knot's Conway polynomial");
        acc = acc + z2.pow((e / 2) as u32).scale(coef);
    }
    acc
}

pub fn conway_alexander(d: &PlanarDiagram) -> Result<Polynomial, ConwayError> {
    conway_alexander_with(d, ConwayBudget::default())
}

pub fn conway_alexander_with(d: &PlanarDiagram, budget: ConwayBudget) -> Result<Polynomial, ConwayError> {
    let p = conway_to_alexander(&conway_polynomial(d, budget)?);
    Ok(if p.eval_i64(1).unwrap_or(0) < 0 { -p } else { p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_braid, parse_pd};

    #[test]
    fn small_knots() {
        let t = parse_pd("X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)").unwrap();
        assert_eq!(conway_polynomial(&t, ConwayBudget::default()).unwrap().render("z"), "z^2 + 1");
        assert_eq!(conway_alexander(&t).unwrap().to_string(), "T - 1 + T^-1");
        let f8 = parse_braid(&[1, -2, 1, -2], 3).unwrap();
        assert_eq!(conway_alexander(&f8).unwrap().to_string(), "-T + 3 - T^-1");
        assert_eq!(conway_alexander(&PlanarDiagram::unknot()).unwrap(), Polynomial::one());
        let t25 = parse_braid(&[1, 1, 1, 1, 1], 2).unwrap();
        assert_eq!(conway_alexander(&t25).unwrap().to_string(), "T^2 - T + 1 - T^-1 + T^-2");
    }

    #[test]
    fn kinks_and_budget() {
        let kink = parse_braid(&[1], 2).unwrap();
        assert_eq!(conway_alexander(&kink).unwrap(), Polynomial::one());
        let t34 = parse_braid(&[1, 2, 1, 2, 1, 2, 1, 2], 3).unwrap();
        let tight = ConwayBudget { max_crossings: 5, max_nodes: 100 };
        assert!(matches!(conway_alexander_with(&t34, tight), Err(ConwayError::RecursionBudgetExceeded(_))));
    }

    #[test]
    fn hopf_link_value() {
        // Positive Hopf link: C = z.
        let mut d = LinkDiagram { crossings: vec![[1, 3, 2, 4], [3, 1, 4, 2]], over_bd: vec![false, false], free_loops: 0 };
        assert_eq!(d.normalize(), 2);
        let mut r = Recursion { memo: HashMap::new(), nodes: 0, budget: ConwayBudget::default() };
        let v = r.eval(d).unwrap();
        assert_eq!(v.render("z").replace(' ', "").trim_start_matches('-'), "z");
    }
}
