use super::{DiagramError, PlanarDiagram};

/// Closure of a braid word. Letter `i > 0` is the positive generator between
/// strands `i` and `i+1`, `-i` its inverse.
pub fn parse_braid(word: &[i64], strands: usize) -> Result<PlanarDiagram, DiagramError> {
    for &l in word {
        if l == 0 || l.unsigned_abs() as usize >= strands {
            return Err(DiagramError::LetterOutOfRange { letter: l, strands });
        }
    }
    let mut perm: Vec<usize> = (0..strands).collect();
    for &l in word {
        let i = l.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let cycles = count_cycles(&perm);
    if cycles != 1 {
        return Err(DiagramError::ClosureIsLink(cycles));
    }
    if word.is_empty() {
        return Ok(PlanarDiagram::unknot());
    }

    // Strands run upward; position p carries the label of its current edge.
    let mut next_label: i64 = strands as i64 + 1;
    let mut current: Vec<i64> = (1..=strands as i64).collect();
    let mut tuples = Vec::with_capacity(word.len());
    for &l in word {
        let i = l.unsigned_abs() as usize - 1;
        let (in_l, in_r) = (current[i], current[i + 1]);
        let (out_l, out_r) = (next_label, next_label + 1);
        next_label += 2;
        if l > 0 {
            tuples.push([in_r, out_r, out_l, in_l]);
        } else {
            tuples.push([in_l, in_r, out_r, out_l]);
        }
        current[i] = out_l;
        current[i + 1] = out_r;
    }
    // Close up: the top edge at position p continues as the bottom edge at p.
    for (p, &top) in current.iter().enumerate() {
        let bottom = p as i64 + 1;
        for t in tuples.iter_mut() {
            for v in t.iter_mut() {
                if *v == top {
                    *v = bottom;
                }
            }
        }
    }
    PlanarDiagram::from_tuples(&tuples)
}

fn count_cycles(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            p = perm[p];
        }
    }
    cycles
}

/// Parse a word such as `[1,1,1]`, `1 -2 1` or `{1,-2}`.
pub fn parse_braid_text(text: &str, strands: usize) -> Result<PlanarDiagram, DiagramError> {
    let word = braid_word_from_text(text)?;
    parse_braid(&word, strands)
}

pub fn braid_word_from_text(text: &str) -> Result<Vec<i64>, DiagramError> {
    text.split(|c: char| c == ',' || c.is_whitespace() || "[]{}()".contains(c))
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<i64>().map_err(|_| DiagramError::MalformedTuple(p.to_string())))
        .collect()
}

/// Standard positive braid word for the torus knot `T(p,q)` on `p` strands.
pub fn torus_braid(p: usize, q: usize) -> Vec<i64> {
    (0..q).flat_map(|_| 1..p as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Sign;

    #[test]
    fn trefoil_closure_is_positive() {
        let d = parse_braid(&[1, 1, 1], 2).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.writhe(), 3);
        assert!(d.is_alternating());
        assert_eq!(d.faces().regions.len(), 5);
    }

    #[test]
    fn negative_letters_give_negative_crossings() {
        let d = parse_braid(&[1, -2, 1, -2], 3).unwrap();
        assert_eq!(d.writhe(), 0);
        let signs: Vec<Sign> = (0..4).map(|x| d.sign(x)).collect();
        assert_eq!(signs.iter().filter(|s| **s == Sign::Positive).count(), 2);
        assert!(d.is_alternating());
    }

    #[test]
    fn braid_errors() {
        assert_eq!(parse_braid(&[1, 3], 3), Err(DiagramError::LetterOutOfRange { letter: 3, strands: 3 }));
        assert_eq!(parse_braid(&[0], 3), Err(DiagramError::LetterOutOfRange { letter: 0, strands: 3 }));
        assert_eq!(parse_braid(&[1, 1], 2), Err(DiagramError::ClosureIsLink(2)));
        assert!(parse_braid(&[], 1).unwrap().is_unknot_sentinel());
        assert_eq!(parse_braid(&[], 2), Err(DiagramError::ClosureIsLink(2)));
    }

    #[test]
    fn kinked_unknot_from_single_letter() {
        let d = parse_braid(&[1], 2).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert!(!d.is_reduced());
    }

    #[test]
    fn torus_words() {
        assert_eq!(torus_braid(3, 4), vec![1, 2, 1, 2, 1, 2, 1, 2]);
        let d = parse_braid(&torus_braid(5, 6), 5).unwrap();
        assert_eq!(d.crossing_count(), 24);
        assert_eq!(d.writhe(), 24);
    }

    #[test]
    fn text_forms() {
        assert_eq!(braid_word_from_text("[1,-2, 1]").unwrap(), vec![1, -2, 1]);
        assert_eq!(braid_word_from_text("1 -2 1").unwrap(), vec![1, -2, 1]);
        assert!(braid_word_from_text("[a]").is_err());
    }
}
