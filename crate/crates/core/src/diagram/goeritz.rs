use num_bigint::BigInt;
use num_rational::Ratio;

use super::{Color, PlanarDiagram};
use crate::linalg::{signature, Matrix};

/// Goeritz form of the surface built from the regions of colour `shaded`.
#[derive(Clone, Debug)]
pub struct Goeritz {
    /// Reduced matrix on the unshaded regions, one region deleted.
    pub matrix: Matrix<i64>,
    /// Correction term summed over crossings where the surface twists against the orientation.
    pub correction: i64,
}

/// Incidence index of a crossing: `+1` when the shaded corners are the ones
/// swept by turning the over-strand counterclockwise.
fn eta(shaded_odd: bool) -> i64 {
    if shaded_odd {
        1
    } else {
        -1
    }
}

pub fn goeritz_matrix(d: &PlanarDiagram, shaded: Color) -> Goeritz {
    let n = d.crossing_count();
    if n == 0 {
        return Goeritz { matrix: Matrix::zeros(0, 0), correction: 0 };
    }
    let faces = d.faces();
    let colors = faces.checkerboard();
    let white: Vec<usize> = (0..faces.regions.len()).filter(|&r| colors[r] != shaded).collect();
    let index = |r: usize| white.iter().position(|&w| w == r).expect("unshaded region");
    let k = white.len();
    let mut g = Matrix::<i64>::zeros(k, k);
    let mut correction = 0;
    for x in 0..n {
        let shaded_odd = colors[faces.corner_region[x][1]] == shaded;
        let e = eta(shaded_odd);
        // Twisted against the orientation: the towards/away corners are shaded.
        let towards_away_odd = d.sign(x).value() > 0;
        if shaded_odd == towards_away_odd {
            correction += e;
        }
        let (u, v) = if shaded_odd { (0, 2) } else { (1, 3) };
        let (i, j) = (index(faces.corner_region[x][u]), index(faces.corner_region[x][v]));
        if i != j {
            g[(i, j)] -= e;
            g[(j, i)] -= e;
            g[(i, i)] += e;
            g[(j, j)] += e;
        }
    }
    let keep: Vec<usize> = (1..k).collect();
    Goeritz { matrix: g.submatrix(&keep, &keep), correction }
}

/// Signature via the Gordon-Litherland formula on the black surface.
pub fn goeritz_signature(d: &PlanarDiagram) -> i64 {
    signature_with(d, Color::Black)
}

pub fn signature_with(d: &PlanarDiagram, shaded: Color) -> i64 {
    let g = goeritz_matrix(d, shaded);
    let q = g.matrix.map(|&v| Ratio::from_integer(BigInt::from(v)));
    signature(&q) - g.correction
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_braid, parse_pd};

    #[test]
    fn trefoil_signatures() {
        let rh = parse_pd("X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)").unwrap();
        assert_eq!(goeritz_signature(&rh), -2);
        assert_eq!(signature_with(&rh, Color::White), -2);
        assert_eq!(goeritz_signature(&rh.mirror()), 2);
    }

    #[test]
    fn figure_eight_is_zero() {
        let d = parse_braid(&[1, -2, 1, -2], 3).unwrap();
        assert_eq!(goeritz_signature(&d), 0);
        assert_eq!(signature_with(&d, Color::White), 0);
    }

    #[test]
    fn unknot_diagrams() {
        assert_eq!(goeritz_signature(&PlanarDiagram::unknot()), 0);
        let kink = parse_braid(&[1], 2).unwrap();
        assert_eq!(goeritz_signature(&kink), 0);
        assert_eq!(signature_with(&kink, Color::White), 0);
    }
}
