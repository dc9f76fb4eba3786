//! Resolving knot references to diagrams.

use num_integer::Integer;

use hfk_core::diagram::{braid_word_from_text, parse_braid, parse_pd, torus_braid, PlanarDiagram};

use crate::corpus::{default_strands, Corpus, Expected};
use crate::CliError;

/// A knot named on the command line: a corpus name, `T(p,q)`, an inline PD
/// code or an inline braid word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnotRef {
    pub name: Option<String>,
    pub pd: Option<String>,
    pub braid: Option<String>,
    pub strands: Option<usize>,
}

impl KnotRef {
    pub fn named(name: &str) -> Self {
        KnotRef { name: Some(name.to_string()), ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct Knot {
    pub name: String,
    pub diagram: PlanarDiagram,
    pub braid: Option<(Vec<i64>, usize)>,
    pub torus: Option<(i64, i64)>,
    pub expected: Option<Expected>,
}

impl Knot {
    pub fn is_positive_braid(&self) -> bool {
        self.braid.as_ref().is_some_and(|(w, _)| !w.is_empty() && w.iter().all(|&l| l > 0))
    }
}

/// `T(p,q)` with integer `p, q`.
pub fn parse_torus_name(name: &str) -> Option<(i64, i64)> {
    let inner = name.trim().strip_prefix("T(")?.strip_suffix(')')?;
    let (p, q) = inner.split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

fn torus_knot(name: &str, p: i64, q: i64) -> Result<Knot, CliError> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(CliError::Domain(format!("{name} is not a torus knot: need coprime p, q >= 2")));
    }
    let word = torus_braid(p as usize, q as usize);
    let diagram = parse_braid(&word, p as usize).map_err(|e| CliError::from_diagram(name, e))?;
    Ok(Knot { name: name.to_string(), diagram, braid: Some((word, p as usize)), torus: Some((p, q)), expected: None })
}

pub fn resolve(corpus: &Corpus, r: &KnotRef) -> Result<Knot, CliError> {
    let given = [r.name.is_some(), r.pd.is_some(), r.braid.is_some()].iter().filter(|b| **b).count();
    if given != 1 {
        return Err(CliError::Parse("give exactly one of a knot name, --pd or --braid".into()));
    }
    if let Some(pd) = &r.pd {
        let diagram = parse_pd(pd).map_err(|e| CliError::from_diagram("--pd", e))?;
        return Ok(Knot { name: "pd".into(), diagram, braid: None, torus: None, expected: None });
    }
    if let Some(text) = &r.braid {
        let word = braid_word_from_text(text).map_err(|e| CliError::from_diagram("--braid", e))?;
        let strands = r.strands.unwrap_or_else(|| default_strands(&word));
        let diagram = parse_braid(&word, strands).map_err(|e| CliError::from_diagram("--braid", e))?;
        return Ok(Knot { name: "braid".into(), diagram, braid: Some((word, strands)), torus: None, expected: None });
    }
    let name = r.name.as_deref().unwrap_or_default();
    if let Some(e) = corpus.get(name) {
        return Ok(Knot {
            name: e.name.clone(),
            diagram: e.diagram()?,
            braid: e.braid_word(),
            torus: parse_torus_name(&e.name),
            expected: Some(e.expected.clone()),
        });
    }
    match parse_torus_name(name) {
        Some((p, q)) => torus_knot(name, p, q),
        None => Err(CliError::UnknownKnot(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn references() {
        let c = Corpus::bundled();
        let k = resolve(&c, &KnotRef::named("3_1")).unwrap();
        assert_eq!(k.diagram.crossing_count(), 3);
        assert!(k.is_positive_braid());
        let t = resolve(&c, &KnotRef::named("T(2,9)")).unwrap();
        assert_eq!((t.torus, t.diagram.crossing_count()), (Some((2, 9)), 9));
        assert!(matches!(resolve(&c, &KnotRef::named("9_99")), Err(CliError::UnknownKnot(_))));
        assert!(matches!(resolve(&c, &KnotRef::named("T(2,4)")), Err(CliError::Domain(_))));
        let b = KnotRef { braid: Some("[1,-2,1,-2]".into()), ..Default::default() };
        assert_eq!(resolve(&c, &b).unwrap().braid.unwrap().1, 3);
        let pd = KnotRef { pd: Some("X(1,4,2,3), X(3,6,4,5), X(5,2,6,1)".into()), ..Default::default() };
        assert!(matches!(resolve(&c, &pd), Err(CliError::Domain(_))));
        let bad = KnotRef { pd: Some("X(1,2".into()), ..Default::default() };
        assert!(matches!(resolve(&c, &bad), Err(CliError::Parse(_))));
        assert!(resolve(&c, &KnotRef::default()).is_err());
    }
}
