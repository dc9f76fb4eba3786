//! SVG dot plots of bigraded groups: Alexander grading across, Maslov
//! grading up, one dot per nonzero summand, ranks above one written beside
//! the dot.

use std::fmt::Write;

use hfk_core::hfk::BigradedGroup;

const CELL: i64 = 40;
const MARGIN: i64 = 50;

pub fn svg(g: &BigradedGroup, title: &str) -> String {
    let pts: Vec<((i64, i64), u64)> = {
        let mut v: Vec<_> = g.entries().map(|(&k, s)| (k, s.free_rank + s.torsion.len() as u64)).collect();
        v.sort();
        v
    };
    let (a_lo, a_hi) = span(pts.iter().map(|((a, _), _)| *a));
    let (m_lo, m_hi) = span(pts.iter().map(|((_, m), _)| *m));
    let width = (a_hi - a_lo) * CELL + 2 * MARGIN;
    let height = (m_hi - m_lo) * CELL + 2 * MARGIN;
    let x = |a: i64| MARGIN + (a - a_lo) * CELL;
    let y = |m: i64| MARGIN + (m_hi - m) * CELL;

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#).unwrap();
    writeln!(s, "<title>{}</title>", escape(title)).unwrap();
    writeln!(s, r##"<rect width="{width}" height="{height}" fill="#ffffff"/>"##).unwrap();
    writeln!(s, r##"<g stroke="#dddddd" stroke-width="1">"##).unwrap();
    for a in a_lo..=a_hi {
        writeln!(s, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#, x(a), y(m_hi), y(m_lo)).unwrap();
    }
    for m in m_lo..=m_hi {
        writeln!(s, r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#, y(m), x(a_lo), x(a_hi)).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r##"<g font-family="sans-serif" font-size="11" fill="#555555" text-anchor="middle">"##).unwrap();
    for a in a_lo..=a_hi {
        writeln!(s, r#"<text x="{}" y="{}">{a}</text>"#, x(a), y(m_lo) + 25).unwrap();
    }
    for m in m_lo..=m_hi {
        writeln!(s, r#"<text x="{}" y="{}">{m}</text>"#, x(a_lo) - 25, y(m) + 4).unwrap();
    }
    writeln!(s, r#"<text x="{}" y="{}">A</text>"#, x(a_hi) + 25, y(m_lo) + 25).unwrap();
    writeln!(s, r#"<text x="{}" y="{}">M</text>"#, x(a_lo) - 25, y(m_hi) - 20).unwrap();
    writeln!(s, "</g>").unwrap();
    writeln!(s, r##"<g fill="#000000">"##).unwrap();
    for ((a, m), r) in &pts {
        writeln!(s, r#"<circle class="dot" cx="{}" cy="{}" r="6" data-a="{a}" data-m="{m}" data-rank="{r}"/>"#, x(*a), y(*m))
            .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r##"<g font-family="sans-serif" font-size="13" fill="#000000">"##).unwrap();
    for ((a, m), r) in pts.iter().filter(|(_, r)| *r > 1) {
        writeln!(s, r#"<text class="rank" x="{}" y="{}">{r}</text>"#, x(*a) + 9, y(*m) - 8).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    s.push_str("</svg>\n");
    s
}

fn span(it: impl Iterator<Item = i64>) -> (i64, i64) {
    let v: Vec<i64> = it.collect();
    match (v.iter().min(), v.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0, 0),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dots_and_annotations() {
        let g = BigradedGroup::from_ranks([((-1, -1), 1), ((0, 0), 3), ((1, 1), 1)]);
        let s = svg(&g, "4_1");
        assert_eq!(s.matches("<circle").count(), 3);
        assert_eq!(s.matches(r#"class="rank""#).count(), 1);
        assert!(s.contains(r#"data-a="0" data-m="0" data-rank="3""#));
        assert_eq!(s, svg(&g, "4_1"));
        let u = svg(&BigradedGroup::unknot(), "unknot");
        assert_eq!(u.matches("<circle").count(), 1);
    }
}
