//! Line-of-sight intersection with walls and floors.

use super::model::{Obstacle, ObstacleGeometry, Position};
use crate::rfmath::Gain;

const EPS: f64 = 1e-12;

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Footprint endpoints ordered so the lexicographically lower point comes
/// first; keeps the half-open convention independent of how a wall was
/// written down.
fn ordered(from: [f64; 2], to: [f64; 2]) -> ([f64; 2], [f64; 2]) {
    if (from[0], from[1]) <= (to[0], to[1]) {
        (from, to)
    } else {
        (to, from)
    }
}

fn crosses(a: &Position, b: &Position, geometry: &ObstacleGeometry) -> bool {
    let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    match *geometry {
        ObstacleGeometry::Wall { from, to, z_range } => {
            let (p, q) = ordered(from, to);
            let e = [q[0] - p[0], q[1] - p[1]];
            let denom = cross([d[0], d[1]], e);
            if denom.abs() < EPS {
                return false;
            }
            let w = [p[0] - a[0], p[1] - a[1]];
            let s = cross(w, e) / denom;
            let u = cross(w, [d[0], d[1]]) / denom;
            if !(0.0..=1.0).contains(&s) || !(0.0..1.0).contains(&u) {
                return false;
            }
            let z = a[2] + s * d[2];
            z_range.0 <= z && z < z_range.1
        }
        ObstacleGeometry::Floor { min, max, height } => {
            if d[2].abs() < EPS {
                return false;
            }
            let s = (height - a[2]) / d[2];
            if !(0.0..=1.0).contains(&s) {
                return false;
            }
            let x = a[0] + s * d[0];
            let y = a[1] + s * d[1];
            min[0] <= x && x < max[0] && min[1] <= y && y < max[1]
        }
    }
}

/// Indices of the obstacles the straight segment `a → b` passes through.
///
/// The segment is closed at both ends. Wall footprints are half-open,
/// including their lower endpoint, and so are wall heights and floor
/// rectangles. A segment parallel to an obstacle never crosses it.
pub fn crossings(a: &Position, b: &Position, obstacles: &[Obstacle]) -> Vec<usize> {
    obstacles
        .iter()
        .enumerate()
        .filter(|(_, o)| crosses(a, b, &o.geometry))
        .map(|(i, _)| i)
        .collect()
}

/// Summed attenuation of every obstacle between `a` and `b`.
pub fn obstacle_loss(a: &Position, b: &Position, obstacles: &[Obstacle]) -> Gain {
    Gain(
        obstacles
            .iter()
            .filter(|o| crosses(a, b, &o.geometry))
            .map(|o| o.attenuation.db())
            .sum(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn wall(from: [f64; 2], to: [f64; 2]) -> Obstacle {
        Obstacle {
            attenuation: Gain(3.0),
            geometry: ObstacleGeometry::Wall {
                from,
                to,
                z_range: (0.0, 3.0),
            },
        }
    }

    fn floor(h: f64) -> Obstacle {
        Obstacle {
            attenuation: Gain(15.0),
            geometry: ObstacleGeometry::Floor {
                min: [-50.0, -50.0],
                max: [50.0, 50.0],
                height: h,
            },
        }
    }

    #[test]
    fn straight_through_walls() {
        let walls: Vec<_> = (1..=8)
            .map(|k| wall([k as f64 * 3.0, -5.0], [k as f64 * 3.0, 5.0]))
            .collect();
        let a = [0.0, 0.0, 1.0];
        let b = [30.0, 0.0, 1.0];
        assert_eq!(crossings(&a, &b, &walls).len(), 8);
        assert_eq!(obstacle_loss(&a, &b, &walls), Gain(24.0));
        assert_eq!(crossings(&a, &[10.0, 0.0, 1.0], &walls), vec![0, 1, 2]);
    }

    #[test]
    fn misses_and_edges() {
        let w = wall([5.0, 0.0], [5.0, 4.0]);
        // Above the wall.
        assert!(crossings(&[0.0, 1.0, 4.0], &[10.0, 1.0, 4.0], std::slice::from_ref(&w)).is_empty());
        // Past the footprint.
        assert!(crossings(&[0.0, 5.0, 1.0], &[10.0, 5.0, 1.0], std::slice::from_ref(&w)).is_empty());
        // Lower endpoint is inside, upper endpoint outside.
        assert_eq!(
            crossings(&[0.0, 0.0, 1.0], &[10.0, 0.0, 1.0], std::slice::from_ref(&w)).len(),
            1
        );
        assert!(crossings(&[0.0, 4.0, 1.0], &[10.0, 4.0, 1.0], std::slice::from_ref(&w)).is_empty());
        // Segment ends on the wall: closed, so it counts.
        assert_eq!(
            crossings(&[0.0, 1.0, 1.0], &[5.0, 1.0, 1.0], std::slice::from_ref(&w)).len(),
            1
        );
        // Parallel, even when collinear.
        assert!(crossings(&[5.0, -1.0, 1.0], &[5.0, 9.0, 1.0], &[w]).is_empty());
    }

    #[test]
    fn floors() {
        let floors: Vec<_> = (1..=5).map(|k| floor(k as f64 * 3.0)).collect();
        let a = [0.0, 0.0, 1.5];
        assert_eq!(crossings(&a, &[0.0, 0.0, 13.5], &floors).len(), 4);
        assert_eq!(crossings(&a, &[4.0, 2.0, 16.5], &floors).len(), 5);
        assert!(crossings(&a, &[10.0, 0.0, 1.5], &floors).is_empty());
        // Outside the slab footprint.
        assert!(crossings(&[60.0, 0.0, 1.0], &[60.0, 0.0, 5.0], &floors).is_empty());
    }

    proptest! {
        #[test]
        fn symmetric(ax in -20.0f64..20.0, ay in -20.0f64..20.0, az in 0.0f64..10.0,
                     bx in -20.0f64..20.0, by in -20.0f64..20.0, bz in 0.0f64..10.0) {
            let obstacles = vec![
                wall([0.0, -10.0], [0.0, 10.0]),
                wall([-7.0, 3.0], [9.0, 3.0]),
                wall([4.0, 4.0], [-4.0, -4.0]),
                floor(5.0),
            ];
            let a = [ax, ay, az];
            let b = [bx, by, bz];
            prop_assert_eq!(crossings(&a, &b, &obstacles), crossings(&b, &a, &obstacles));
        }
    }
}
