use super::frontier::{Frontier, FrontierPoint, PointOrigin};
use crate::error::{Error, Result};

/// Minkowski sum of two frontiers over the same slice.
///
/// Every pair of sample points is summed, then the product set is pruned to
/// its weakly nondominated points: a point is dropped only when another one
/// is strictly larger in both the traced and the companion coordinate.
pub fn minkowski_sum(a: &Frontier, b: &Frontier) -> Result<Frontier> {
    if a.slice != b.slice {
        return Err(Error::IncompatibleFrontiers(format!(
            "slices differ: {} vs {}",
            a.slice, b.slice
        )));
    }
    let slice = a.slice;
    let mut sums: Vec<FrontierPoint> = a
        .points
        .iter()
        .flat_map(|p| {
            b.points.iter().map(move |q| FrontierPoint {
                rates: p.rates.add(&q.rates),
                origin: PointOrigin::Sum,
            })
        })
        .collect();

    // descending traced, then descending companion
    sums.sort_by(|x, y| {
        slice
            .traced(&y.rates)
            .total_cmp(&slice.traced(&x.rates))
            .then(slice.companion(&y.rates).total_cmp(&slice.companion(&x.rates)))
    });

    let mut kept = Vec::new();
    let mut best_strictly_above = f64::NEG_INFINITY;
    let mut i = 0;
    while i < sums.len() {
        let t = slice.traced(&sums[i].rates);
        let mut j = i;
        let mut group_best = f64::NEG_INFINITY;
        while j < sums.len() && slice.traced(&sums[j].rates) == t {
            let c = slice.companion(&sums[j].rates);
            group_best = group_best.max(c);
            if c >= best_strictly_above {
                kept.push(sums[j]);
            }
            j += 1;
        }
        best_strictly_above = best_strictly_above.max(group_best);
        i = j;
    }

    kept.sort_by(|x, y| {
        slice
            .traced(&x.rates)
            .total_cmp(&slice.traced(&y.rates))
            .then(slice.companion(&y.rates).total_cmp(&slice.companion(&x.rates)))
    });
    kept.dedup_by(|x, y| x.rates == y.rates);
    Ok(Frontier::new(slice, kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::{RateTriple, RegionTag, Slice};

    fn cq(points: &[(f64, f64)]) -> Frontier {
        Frontier::new(
            Slice::Cq,
            points
                .iter()
                .map(|&(c, q)| FrontierPoint {
                    rates: RateTriple::new(RegionTag::Cqe, c, q, 0.0),
                    origin: PointOrigin::Sum,
                })
                .collect(),
        )
    }

    #[test]
    fn origin_is_the_identity() {
        let a = cq(&[(3.0, 0.0), (2.0, 0.5), (0.0, 1.0)]);
        let o = Frontier::singleton(Slice::Cq, RateTriple::origin(RegionTag::Cqe));
        let s = minkowski_sum(&a, &o).unwrap();
        let rates: Vec<_> = s.points.iter().map(|p| p.rates).collect();
        let expected: Vec<_> = a.points.iter().map(|p| p.rates).collect();
        assert_eq!(rates, expected);
    }

    #[test]
    fn single_points_add() {
        let a = cq(&[(1.0, 1.0)]);
        let s = minkowski_sum(&a, &a).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.points[0].rates.coords(), [2.0, 2.0, 0.0]);
    }

    #[test]
    fn orthogonal_segments_give_the_square_boundary() {
        let n = 11;
        let grid: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let a = cq(&grid.iter().map(|&c| (c, 0.0)).collect::<Vec<_>>());
        let b = cq(&grid.iter().map(|&q| (0.0, q)).collect::<Vec<_>>());
        let s = minkowski_sum(&a, &b).unwrap();

        // brute force over the product set: keep (c, q) unless something is
        // strictly larger in both coordinates
        let mut expected = Vec::new();
        for &c in &grid {
            for &q in &grid {
                let dominated = grid.iter().any(|&c2| grid.iter().any(|&q2| c2 > c && q2 > q));
                if !dominated {
                    expected.push((c, q));
                }
            }
        }
        assert_eq!(s.len(), expected.len());
        assert_eq!(s.len(), 2 * n - 1);
        for p in &s.points {
            let (c, q) = (p.rates.first, p.rates.second);
            assert!(c == 1.0 || q == 1.0, "({c}, {q})");
            assert!(expected.contains(&(c, q)));
        }
        assert!(s.is_weak_pareto());
    }

    #[test]
    fn mismatched_slices_error() {
        let a = cq(&[(1.0, 1.0)]);
        let b = Frontier::singleton(Slice::Ce, RateTriple::origin(RegionTag::Cqe));
        assert!(matches!(minkowski_sum(&a, &b), Err(Error::IncompatibleFrontiers(_))));
    }
}
