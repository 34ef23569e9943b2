use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::geometry::{collinear, lines_through};
use crate::pointset::PointSet;

/// A line carrying the most points, with the indices of those points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineWitness {
    pub count: usize,
    pub indices: Vec<usize>,
}

/// Maximum number of collinear points. For each anchor i the points j > i
/// are grouped by the line through z_i they lie on; a group of size s is a
/// line with s + 1 points.
pub fn max_points_on_line(ps: &PointSet) -> Result<LineWitness> {
    let z = ps.points();
    check_size(z)?;
    let mut best = LineWitness {
        count: 0,
        indices: Vec::new(),
    };
    for i in 0..z.len() {
        if z.len() - i <= best.count {
            break;
        }
        let later: Vec<usize> = (i + 1..z.len()).collect();
        for members in lines_through(&z[i], z, &later) {
            if members.len() + 1 > best.count {
                best.count = members.len() + 1;
                best.indices = std::iter::once(i).chain(members).collect();
            }
        }
    }
    Ok(best)
}

/// Cubic reference scan over all pairs and third points.
pub fn max_points_on_line_naive(ps: &PointSet) -> Result<usize> {
    let z = ps.points();
    check_size(z)?;
    let mut best = 2;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let on = (0..z.len())
                .filter(|&k| k == i || k == j || collinear(&z[i], &z[j], &z[k]))
                .count();
            best = best.max(on);
        }
    }
    Ok(best)
}

fn check_size(z: &[CycNum]) -> Result<()> {
    if z.len() < 2 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointset::{erdos_purdy, square_grid, DEFAULT_LEVEL_CAP, DEFAULT_POINT_BUDGET};
    use num_rational::BigRational;

    #[test]
    fn grid_and_small_sets() {
        let g = square_grid(3, 3, &BigRational::from_integer(1.into()), DEFAULT_POINT_BUDGET).unwrap();
        let w = max_points_on_line(&g).unwrap();
        assert_eq!(w.count, 3);
        assert_eq!(w.indices, [0, 1, 2]);
        let g = square_grid(2, 5, &BigRational::from_integer(1.into()), DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(max_points_on_line(&g).unwrap().count, 5);
        let two = erdos_purdy(1, DEFAULT_LEVEL_CAP).unwrap();
        assert_eq!(max_points_on_line(&two).unwrap().count, 2);
        assert!(max_points_on_line(&two.subset(&[0]).unwrap()).is_err());
    }

    #[test]
    fn doubling_output_has_no_three_on_a_line() {
        let ps = erdos_purdy(3, DEFAULT_LEVEL_CAP).unwrap();
        assert_eq!(max_points_on_line(&ps).unwrap().count, 2);
        assert_eq!(max_points_on_line_naive(&ps).unwrap(), 2);
    }

    #[test]
    fn witness_points_are_collinear() {
        let g = square_grid(4, 4, &BigRational::from_integer(1.into()), DEFAULT_POINT_BUDGET).unwrap();
        let w = max_points_on_line(&g).unwrap();
        let z = g.points();
        for &k in &w.indices[2..] {
            assert!(collinear(&z[w.indices[0]], &z[w.indices[1]], &z[k]));
        }
        assert_eq!(w.count, max_points_on_line_naive(&g).unwrap());
    }
}
