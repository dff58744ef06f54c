//! Named configurations: stars of contexts around a common atom, and the
//! bug (cat's cradle) with a derived coordinatization.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::ray::{self, Ray};

use super::{Atom, Diagram};

/// `n` contexts `{c, a_i, a_i'}` sharing the single atom `c`, coordinatized
/// with `c = e3`, `a_i = (cos θ_i, sin θ_i, 0)`, `a_i' = (-sin θ_i, cos θ_i, 0)`
/// and `θ_i = iπ/(2n)`.
pub fn make_star(n: usize) -> Result<Diagram> {
    if n < 1 {
        return Err(Error::InvalidStarSize(n));
    }
    let mut atoms = vec![Atom::with_ray("c", Ray::basis(3, 2)?)];
    let mut blocks = Vec::with_capacity(n);
    for i in 1..=n {
        let theta = i as f64 * PI / (2.0 * n as f64);
        let (s, c) = theta.sin_cos();
        let (a, a_prime) = (format!("a{i}"), format!("a{i}'"));
        atoms.push(Atom::with_ray(&a, Ray::new(vec![c, s, 0.0])?));
        atoms.push(Atom::with_ray(&a_prime, Ray::new(vec![-s, c, 0.0])?));
        blocks.push(vec!["c".to_owned(), a, a_prime]);
    }
    Diagram::new(3, atoms, blocks)
}

/// Atom ids of the bug, in the order they appear in [`make_bug`].
pub const BUG_ATOMS: [&str; 13] = [
    "c", "a", "d", "m2", "e", "f", "g", "h", "k", "z", "m6", "b", "m7",
];

/// Blocks `C1..C7` of the bug.
pub const BUG_BLOCKS: [[&str; 3]; 7] = [
    ["c", "a", "d"],
    ["c", "m2", "e"],
    ["d", "f", "g"],
    ["e", "h", "k"],
    ["f", "z", "h"],
    ["g", "m6", "b"],
    ["b", "m7", "k"],
];

/// The 13-atom, 7-block bug configuration, carrying the coordinatization
/// from [`derive_bug_coordinatization`].
pub fn make_bug() -> Diagram {
    let coords = derive_bug_coordinatization();
    let atoms = coords
        .rays
        .into_iter()
        .map(|(id, r)| Atom::with_ray(id, r))
        .collect();
    let blocks = BUG_BLOCKS
        .iter()
        .map(|b| b.iter().map(|s| s.to_string()).collect())
        .collect();
    Diagram::new(3, atoms, blocks).expect("bug configuration is well formed")
}

#[derive(Debug, Clone)]
pub struct BugCoordinatization {
    /// Angle of `a` in the plane orthogonal to `c`, measured from `e3`
    /// towards `c × e3`.
    pub azimuth: f64,
    /// `(id, ray)` in [`BUG_ATOMS`] order.
    pub rays: Vec<(&'static str, Ray)>,
    /// `|⟨f|h⟩|`, the only orthogonality not closed by construction.
    pub closure_residual: f64,
}

impl BugCoordinatization {
    pub fn ray(&self, id: &str) -> Option<&Ray> {
        self.rays.iter().find(|(n, _)| *n == id).map(|(_, r)| r)
    }
}

/// Coordinatize the bug with `c = (√2, 1, 0)/√3` and `b = (√2, -1, 0)/√3`.
///
/// The ray `a` is a free unit vector orthogonal to `c`; `d`, `g`, `f` and
/// `m6` then follow by cross products along `C1`, `C6` and `C3`. The other
/// half of the bug is the mirror image under `z -> -z`, which fixes `c` and
/// `b`. Only `C5` remains open, and its residual `⟨f|h⟩` vanishes to second
/// order at the closing azimuth (an overlap of 1/3 is the largest the bug
/// admits), so the root is located by bisecting on the sign of the
/// residual's slope rather than of the residual itself.
pub fn derive_bug_coordinatization() -> BugCoordinatization {
    const GRID: usize = 64;
    let residual = |phi: f64| half_bug(phi).closure;

    // Coarse scan of (0, π/2); the first minimum wins ties.
    let step = FRAC_PI_2 / GRID as f64;
    let mut best = 1;
    for i in 2..GRID {
        if residual(i as f64 * step) < residual(best as f64 * step) {
            best = i;
        }
    }
    let (mut lo, mut hi) = ((best - 1) as f64 * step, (best + 1) as f64 * step);

    let slope = |phi: f64| {
        let h = 2e-6;
        residual(phi + h) - residual(phi - h)
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let azimuth = 0.5 * (lo + hi);
    let half = half_bug(azimuth);

    let z = ray::cross3(&half.f, &mirror(&half.f)).expect("f and h are not collinear");
    let rays = vec![
        ("c", half.c.clone()),
        ("a", half.a.clone()),
        ("d", half.d.clone()),
        ("m2", mirror(&half.a)),
        ("e", mirror(&half.d)),
        ("f", half.f.clone()),
        ("g", half.g.clone()),
        ("h", mirror(&half.f)),
        ("k", mirror(&half.g)),
        ("z", z),
        ("m6", half.m6.clone()),
        ("b", half.b.clone()),
        ("m7", mirror(&half.m6)),
    ];
    BugCoordinatization {
        azimuth,
        rays,
        closure_residual: half.closure.abs(),
    }
}

struct HalfBug {
    c: Ray,
    b: Ray,
    a: Ray,
    d: Ray,
    g: Ray,
    f: Ray,
    m6: Ray,
    /// `⟨f|Mf⟩` where `M` is the mirror; `Mf` plays the role of `h`.
    closure: f64,
}

fn half_bug(azimuth: f64) -> HalfBug {
    let (r2, r3) = (2f64.sqrt(), 3f64.sqrt());
    let c = Ray::new(vec![r2 / r3, 1.0 / r3, 0.0]).unwrap();
    let b = Ray::new(vec![r2 / r3, -1.0 / r3, 0.0]).unwrap();
    let u1 = Ray::basis(3, 2).unwrap();
    let u2 = ray::cross3(&c, &u1).unwrap();
    let (s, co) = azimuth.sin_cos();
    let a = Ray::new(
        u1.components()
            .iter()
            .zip(u2.components())
            .map(|(x, y)| co * x + s * y)
            .collect(),
    )
    .unwrap();
    let d = ray::cross3(&c, &a).unwrap();
    let g = ray::cross3(&d, &b).unwrap();
    let f = ray::cross3(&d, &g).unwrap();
    let m6 = ray::cross3(&g, &b).unwrap();
    let closure = ray::inner_product(&f, &mirror(&f)).unwrap();
    HalfBug {
        c,
        b,
        a,
        d,
        g,
        f,
        m6,
        closure,
    }
}

fn mirror(r: &Ray) -> Ray {
    let v = r.components();
    Ray::new(vec![v[0], v[1], -v[2]]).unwrap()
}
