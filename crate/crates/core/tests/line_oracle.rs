//! Three straight lines in the plane, stacked top / middle / bottom, give the
//! local picture of a Reidemeister III move. The combinatorial rules for
//! endpoint orders and for the side of the stratum are checked against it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torus_gauss::moves::{legal_order, side};

type V = (f64, f64);

fn cross(a: V, b: V) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

struct Line {
    p: V,
    u: V,
}

impl Line {
    /// Parameter along self of the intersection with other.
    fn meet(&self, o: &Line) -> f64 {
        let w = (o.p.0 - self.p.0, o.p.1 - self.p.1);
        cross(w, o.u) / cross(self.u, o.u)
    }
    fn at(&self, s: f64) -> V {
        (self.p.0 + s * self.u.0, self.p.1 + s * self.u.1)
    }
}

/// Writhe of a crossing with `over` above `under`.
fn writhe(over: &Line, under: &Line) -> i8 {
    if cross(over.u, under.u) > 0.0 {
        1
    } else {
        -1
    }
}

fn random_line(rng: &mut ChaCha8Rng) -> Line {
    let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Line { p: (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), u: (a.cos(), a.sin()) }
}

#[test]
fn orders_and_sides_match_straight_lines() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..5000 {
        let (t, m, b) = (random_line(&mut rng), random_line(&mut rng), random_line(&mut rng));
        if [cross(t.u, m.u), cross(t.u, b.u), cross(m.u, b.u)].iter().any(|c| c.abs() < 1e-3) {
            continue;
        }
        let signs = (writhe(&t, &b), writhe(&t, &m), writhe(&m, &b));
        let order = (t.meet(&m) < t.meet(&b), m.meet(&t) < m.meet(&b), b.meet(&t) < b.meet(&m));
        assert!(legal_order(signs, order), "{signs:?} {order:?}");
        let ml = m.at(m.meet(&b));
        let left = cross(t.u, (ml.0 - t.p.0, ml.1 - t.p.1)) > 0.0;
        let expected = if left { signs.2 } else { -signs.2 };
        assert_eq!(side(signs, order), expected, "{signs:?} {order:?}");
        seen.insert((signs, order));
    }
    // every sign triple with both of its orders
    assert_eq!(seen.len(), 16);
}
