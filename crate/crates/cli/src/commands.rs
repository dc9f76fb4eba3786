//! Subcommands. Each returns an [`Output`] carrying both the TSV text and
//! the JSON value.

use serde_json::{json, Value};

use hfk_core::complex::{
    build_complex, exactness_check, flavor_homologies, hat_homology, hat_homology_generators, stable_depth,
    Coefficients, ComplexSpec, UComplex,
};
use hfk_core::diagram::goeritz_signature;
use hfk_core::hfk::{alternating_hfk, lspace_staircase, staircase_to_group, tau as tau_of, BigradedGroup, TauRoute};
use hfk_core::kauffman::{decorate, DecoratedProjection};
use hfk_core::linalg::Matrix;
use hfk_core::obstruction::{definite_form_obstruction, lens_d, DefiniteForm, LensSpace, Verdict};
use hfk_core::{Polynomial, Rational};

use crate::knot::Knot;
use crate::{CliError, Output};

/// Deepest truncation tried when looking for stable flavour homology.
pub const MAX_DEPTH: usize = 32;

fn decorated(k: &Knot, edge: Option<usize>) -> Result<DecoratedProjection, CliError> {
    decorate(&k.diagram, edge).map_err(|e| CliError::Domain(format!("{}: {e}", k.name)))
}

pub fn alexander_of(k: &Knot, edge: Option<usize>) -> Result<Polynomial, CliError> {
    decorated(k, edge)?.state_sum().map_err(|e| CliError::Domain(e.to_string()))
}

pub fn states(k: &Knot, edge: Option<usize>) -> Result<Output, CliError> {
    let dp = decorated(k, edge)?;
    let sts = dp.states();
    let mut text = String::from("state\tA\tM\n");
    let mut rows = Vec::new();
    for st in &sts {
        let a = dp.alexander_grading(st).map_err(|e| CliError::Domain(e.to_string()))?;
        let m = dp.maslov_grading(st);
        let assignment = if st.regions.is_empty() {
            "-".to_string()
        } else {
            st.regions.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
        };
        text.push_str(&format!("{assignment}\t{a}\t{m}\n"));
        rows.push(json!({ "corners": st.corners, "regions": st.regions, "A": a, "M": m }));
    }
    let delta = dp.state_sum().map_err(|e| CliError::Domain(e.to_string()))?;
    text.push_str(&format!("# states\t{}\n# alexander\t{delta}\n", sts.len()));
    let json = json!({ "knot": k.name, "states": rows, "count": sts.len(), "alexander": delta.to_string() });
    Ok(Output { text, json })
}

/// The knot Floer group by a route the structure theorems certify.
pub fn certified_group(k: &Knot, lspace: bool) -> Result<(BigradedGroup, &'static str), CliError> {
    let delta = alexander_of(k, None)?;
    if lspace {
        let s = lspace_staircase(&delta).map_err(|e| CliError::Domain(e.to_string()))?;
        return Ok((staircase_to_group(&s), "lspace"));
    }
    if k.diagram.is_alternating() {
        let g = alternating_hfk(&delta, goeritz_signature(&k.diagram)).map_err(|e| CliError::Domain(e.to_string()))?;
        return Ok((g, "alternating"));
    }
    Err(CliError::NoCertifiedRoute(format!(
        "{} has a non-alternating diagram and no --lspace assertion; \
         knot Floer differentials of general knots are out of scope",
        k.name
    )))
}

pub fn group_rows(g: &BigradedGroup) -> Vec<((i64, i64), u64)> {
    g.ranks_descending()
}

pub fn hfk(k: &Knot, lspace: bool) -> Result<Output, CliError> {
    let (g, route) = certified_group(k, lspace)?;
    let mut text = String::from("A\tM\trank\n");
    let mut rows = Vec::new();
    for ((a, m), r) in group_rows(&g) {
        text.push_str(&format!("{a}\t{m}\t{r}\n"));
        rows.push(json!({ "A": a, "M": m, "rank": r }));
    }
    text.push_str(&format!("# route\t{route}\n"));
    Ok(Output { text, json: json!({ "knot": k.name, "route": route, "groups": rows }) })
}

/// Every applicable tau route with its value.
pub fn tau_routes(k: &Knot, lspace: bool) -> Result<Vec<(&'static str, i64)>, CliError> {
    let mut routes = Vec::new();
    if let Some((p, q)) = k.torus {
        routes.push(("torus", TauRoute::Torus { p, q }));
    }
    if k.diagram.is_alternating() {
        routes.push(("alternating", TauRoute::Alternating { sigma: goeritz_signature(&k.diagram) }));
    }
    if k.is_positive_braid() {
        let (w, s) = k.braid.as_ref().expect("positive braid");
        routes.push(("positive-braid", TauRoute::PositiveBraid { crossings: w.len() as i64, strands: *s as i64 }));
    }
    if lspace {
        routes.push(("lspace", TauRoute::LSpace(alexander_of(k, None)?)));
    }
    if routes.is_empty() {
        return Err(CliError::NoCertifiedRoute(format!(
            "{}: tau needs an alternating diagram, a positive braid, a torus knot or --lspace",
            k.name
        )));
    }
    routes.into_iter().map(|(n, r)| tau_of(&r).map(|t| (n, t)).map_err(|e| CliError::Domain(e.to_string()))).collect()
}

pub fn tau(k: &Knot, lspace: bool) -> Result<Output, CliError> {
    let routes = tau_routes(k, lspace)?;
    let t = routes[0].1;
    if let Some((n, v)) = routes.iter().find(|(_, v)| *v != t) {
        return Err(CliError::Domain(format!("tau routes disagree: {} gives {t}, {n} gives {v}", routes[0].0)));
    }
    let names: Vec<&str> = routes.iter().map(|(n, _)| *n).collect();
    Ok(Output { text: format!("{t}\n"), json: json!({ "knot": k.name, "tau": t, "routes": names }) })
}

pub fn genus(k: &Knot, lspace: bool) -> Result<Output, CliError> {
    let (g, route) = certified_group(k, lspace)?;
    let v = hfk_core::hfk::genus(&g).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(Output { text: format!("{v}\n"), json: json!({ "knot": k.name, "genus": v, "route": route }) })
}

pub fn alexander(k: &Knot, edge: Option<usize>) -> Result<Output, CliError> {
    let p = alexander_of(k, edge)?;
    Ok(Output { text: format!("{p}\n"), json: json!({ "knot": k.name, "alexander": p.to_string() }) })
}

pub fn det(k: &Knot, edge: Option<usize>) -> Result<Output, CliError> {
    let v = alexander_of(k, edge)?.eval_i64(-1).expect("Laurent polynomials evaluate at -1").unsigned_abs();
    Ok(Output { text: format!("{v}\n"), json: json!({ "knot": k.name, "determinant": v }) })
}

pub fn dinv(p: i64, q: i64) -> Result<Output, CliError> {
    let l = LensSpace::new(p, q).map_err(|e| CliError::Domain(e.to_string()))?;
    let values: Vec<String> = lens_d(l).values.iter().map(|v| v.to_string()).collect();
    Ok(Output { text: format!("{}\n", values.join(", ")), json: json!({ "p": p, "q": q, "d": values }) })
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let bad = || CliError::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn rational_from_json(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_integer)
            .ok_or_else(|| CliError::Parse(format!("correction terms must be integers or \"p/q\" strings, got {n}"))),
        other => Err(CliError::Parse(format!("unexpected correction term {other}"))),
    }
}

/// Correction terms as a JSON list, a JSON map of labels to values, an object
/// with a `d` field, or inline text such as `d=0` or `1/4,-1/4`.
pub fn parse_d_values(text: &str) -> Result<Vec<Rational>, CliError> {
    let t = text.trim();
    match serde_json::from_str::<Value>(t) {
        Ok(Value::Array(a)) => a.iter().map(rational_from_json).collect(),
        Ok(Value::Object(o)) => match o.get("d") {
            Some(Value::Array(a)) => a.iter().map(rational_from_json).collect(),
            Some(v) => Ok(vec![rational_from_json(v)?]),
            None => o.values().map(rational_from_json).collect(),
        },
        Ok(v) => Ok(vec![rational_from_json(&v)?]),
        Err(_) => {
            let t = t.strip_prefix("d=").unwrap_or(t);
            t.split(',').filter(|s| !s.trim().is_empty()).map(parse_rational).collect()
        }
    }
}

/// A Gram matrix as a JSON list of rows or an object with a `gram` field.
pub fn parse_gram(text: &str) -> Result<Matrix<i64>, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("Gram matrix: {e}")))?;
    let rows = match &v {
        Value::Object(o) => o.get("gram").cloned().unwrap_or(Value::Null),
        _ => v.clone(),
    };
    let rows: Vec<Vec<i64>> = serde_json::from_value(rows)
        .map_err(|e| CliError::Parse(format!("Gram matrix must be a list of integer rows: {e}")))?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse("Gram matrix is not square".into()));
    }
    Ok(Matrix::from_rows(rows))
}

fn witness_text(c: &[i64]) -> String {
    if c.iter().all(|&x| x == 0) {
        "0".to_string()
    } else {
        format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

pub fn obstruct(gram: &Matrix<i64>, d_values: &[Rational]) -> Result<Output, CliError> {
    let form = DefiniteForm::new(gram.clone()).map_err(|e| CliError::Domain(e.to_string()))?;
    let verdict = definite_form_obstruction(&form, d_values).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(match verdict {
        Verdict::Passes { m } => Output {
            text: format!("PASSES m(Q)={m}\n"),
            json: json!({ "verdict": "passes", "m": m.to_string() }),
        },
        Verdict::Obstructed { m, witness } => Output {
            text: format!("OBSTRUCTED witness c={}\tm(Q)={m}\n", witness_text(&witness)),
            json: json!({ "verdict": "obstructed", "m": m.to_string(), "witness": witness }),
        },
    })
}

fn combination(c: &UComplex, v: &[i64]) -> String {
    let mut s = String::new();
    for (name, &k) in c.names().iter().zip(v) {
        if k == 0 {
            continue;
        }
        let sign = if k < 0 { "-" } else { "+" };
        let mag = if k.abs() == 1 { String::new() } else { format!("{}*", k.abs()) };
        if s.is_empty() {
            s = format!("{}{mag}{name}", if k < 0 { "-" } else { "" });
        } else {
            s.push_str(&format!(" {sign} {mag}{name}"));
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

pub fn parse_complex(text: &str, mod2: bool) -> Result<UComplex, CliError> {
    let mut spec: ComplexSpec = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("complex: {e}")))?;
    if mod2 {
        spec.ring = Coefficients::Mod2;
    }
    build_complex(&spec).map_err(|e| CliError::Domain(e.to_string()))
}

/// Hat homology with generators, flavour homologies at the stable depth
/// (or `depth`), and the exactness check.
pub fn homology(c: &UComplex, depth: Option<usize>) -> Result<Output, CliError> {
    let b = match depth {
        Some(b) if b >= 1 => b,
        Some(_) => return Err(CliError::Parse("depth must be positive".into())),
        None => stable_depth(c, MAX_DEPTH)
            .ok_or_else(|| CliError::Domain(format!("flavours did not stabilize by depth {MAX_DEPTH}")))?,
    };
    let hat = hat_homology(c);
    let gens = hat_homology_generators(c);
    let f = flavor_homologies(c, b);
    let exact = exactness_check(c, b);
    let ring = match c.ring() {
        Coefficients::Integers => "integers",
        Coefficients::Mod2 => "mod2",
    };
    let mut text = format!("ring\t{ring}\nhat\t{hat}\n");
    let mut gen_json = Vec::new();
    for (g, vs) in &gens {
        for v in vs {
            let comb = combination(c, v);
            text.push_str(&format!("generator\t{g}\t{comb}\n"));
            gen_json.push(json!({ "grading": g, "cycle": comb }));
        }
    }
    text.push_str(&format!(
        "depth\t{b}\nminus\t{}\ninfinity\t{}\nplus\t{}\nstabilized\t{}\nexact\t{exact}\n",
        f.minus, f.infinity, f.plus, f.stabilized
    ));
    let json = json!({
        "ring": ring,
        "hat": hat.to_string(),
        "generators": gen_json,
        "depth": b,
        "minus": f.minus.to_string(),
        "infinity": f.infinity.to_string(),
        "plus": f.plus.to_string(),
        "stabilized": f.stabilized,
        "exact": exact,
    });
    Ok(Output { text, json })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{resolve, KnotRef};
    use crate::Corpus;

    fn knot(name: &str) -> Knot {
        resolve(&Corpus::bundled(), &KnotRef::named(name)).unwrap()
    }

    #[test]
    fn trefoil_states() {
        let o = states(&knot("3_1"), None).unwrap();
        let rows: Vec<&str> = o.text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
        assert_eq!(rows.len(), 3);
        assert!(o.text.ends_with("# alexander\tT - 1 + T^-1\n"));
        let u = states(&knot("unknot"), None).unwrap();
        assert!(u.text.contains("-\t0\t0\n"));
    }

    #[test]
    fn hfk_routes() {
        let f8 = hfk(&knot("4_1"), false).unwrap();
        assert_eq!(f8.text, "A\tM\trank\n1\t1\t1\n0\t0\t3\n-1\t-1\t1\n# route\talternating\n");
        let t34 = hfk(&knot("T(3,4)"), true).unwrap();
        assert_eq!(t34.text.lines().count(), 7);
        assert!(matches!(hfk(&knot("8_20"), false), Err(CliError::NoCertifiedRoute(_))));
        assert!(matches!(hfk(&knot("8_20"), true), Err(CliError::Domain(_))));
    }

    #[test]
    fn scalars() {
        assert_eq!(tau(&knot("3_1"), false).unwrap().text, "1\n");
        assert_eq!(tau(&knot("T(3,4)"), false).unwrap().text, "3\n");
        assert!(matches!(tau(&knot("8_20"), false), Err(CliError::NoCertifiedRoute(_))));
        assert_eq!(genus(&knot("unknot"), false).unwrap().text, "0\n");
        assert_eq!(alexander(&knot("T(2,5)"), None).unwrap().text, "T^2 - T + 1 - T^-1 + T^-2\n");
        assert_eq!(det(&knot("4_1"), None).unwrap().text, "5\n");
        assert_eq!(dinv(2, 1).unwrap().text, "1/4, -1/4\n");
        assert!(dinv(4, 2).is_err());
    }

    #[test]
    fn correction_term_formats() {
        let half = vec![Rational::new(1, 4), Rational::new(-1, 4)];
        assert_eq!(parse_d_values("[\"1/4\", \"-1/4\"]").unwrap(), half);
        assert_eq!(parse_d_values("{\"0\": \"1/4\", \"1\": \"-1/4\"}").unwrap(), half);
        assert_eq!(parse_d_values("{\"d\": [0]}").unwrap(), vec![Rational::from_integer(0)]);
        assert_eq!(parse_d_values("d=2").unwrap(), vec![Rational::from_integer(2)]);
        assert_eq!(parse_d_values("1/4,-1/4").unwrap(), half);
        assert!(parse_d_values("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn obstruction_verdicts() {
        let e8 = hfk_core::obstruction::e8_form();
        let zero = [Rational::from_integer(0)];
        assert_eq!(obstruct(&e8, &zero).unwrap().text, "OBSTRUCTED witness c=0\tm(Q)=8\n");
        assert_eq!(obstruct(&e8, &[Rational::from_integer(2)]).unwrap().text, "PASSES m(Q)=8\n");
        let diag = hfk_core::obstruction::diagonal_form(8);
        assert_eq!(obstruct(&diag, &zero).unwrap().text, "PASSES m(Q)=0\n");
        assert!(parse_gram("[[1,2],[3]]").is_err());
        assert_eq!(parse_gram("{\"gram\": [[-1]]}").unwrap(), diag_one());
    }

    fn diag_one() -> Matrix<i64> {
        hfk_core::obstruction::diagonal_form(1)
    }

    #[test]
    fn worked_complex_homology() {
        let text = r#"{"generators":[{"name":"x1","grading":0},{"name":"x2","grading":-1},{"name":"x3","grading":0}],
            "differential":[{"from":"x1","to":"x2"},{"from":"x3","to":"x2","coeff":-1}]}"#;
        let c = parse_complex(text, false).unwrap();
        let o = homology(&c, None).unwrap();
        assert!(o.text.contains("hat\t{0:Z}\n"), "{}", o.text);
        assert!(o.text.contains("generator\t0\tx1 + x3\n"), "{}", o.text);
        assert!(o.text.contains("exact\ttrue\n"));
        let m = parse_complex(text, true).unwrap();
        assert!(homology(&m, None).unwrap().text.starts_with("ring\tmod2\n"));
        let bad = r#"{"generators":[{"name":"x","grading":0}],"differential":[{"from":"x","to":"y"}]}"#;
        assert!(matches!(parse_complex(bad, false), Err(CliError::Domain(_))));
    }
}
