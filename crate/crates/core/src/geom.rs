//! Small fixed-size types for chart points, tangent vectors and 2x2 symmetric
//! tensors. Everything here is `Copy`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point in a surface chart: `(u, v)` on revolution surfaces, `(x, y)` on graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub c1: f64,
    pub c2: f64,
}

impl Point2 {
    pub const fn new(c1: f64, c2: f64) -> Self {
        Self { c1, c2 }
    }
}

/// Tangent vector components in the chart basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub d1: f64,
    pub d2: f64,
}

impl Vec2 {
    pub const fn new(d1: f64, d2: f64) -> Self {
        Self { d1, d2 }
    }

    pub fn is_zero(self) -> bool {
        self.d1 == 0.0 && self.d2 == 0.0
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.d1 * other.d1 + self.d2 * other.d2
    }

    pub fn as_array(self) -> [f64; 2] {
        [self.d1, self.d2]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.d1, -self.d2)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(self * v.d1, self * v.d2)
    }
}

/// Symmetric 2x2 matrix `[[m11, m12], [m12, m22]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sym2 {
    pub m11: f64,
    pub m12: f64,
    pub m22: f64,
}

impl Sym2 {
    pub const fn new(m11: f64, m12: f64, m22: f64) -> Self {
        Self { m11, m12, m22 }
    }

    pub const fn identity() -> Self {
        Self::new(1.0, 0.0, 1.0)
    }

    pub const fn diag(d1: f64, d2: f64) -> Self {
        Self::new(d1, 0.0, d2)
    }

    /// `v vᵀ`
    pub fn outer(v: Vec2) -> Self {
        Self::new(v.d1 * v.d1, v.d1 * v.d2, v.d2 * v.d2)
    }

    /// `v wᵀ + w vᵀ`
    pub fn sym_outer(v: Vec2, w: Vec2) -> Self {
        Self::new(
            2.0 * v.d1 * w.d1,
            v.d1 * w.d2 + v.d2 * w.d1,
            2.0 * v.d2 * w.d2,
        )
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m12
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn is_positive_definite(&self) -> bool {
        self.m11 > 0.0 && self.det() > 0.0
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m11 * v.d1 + self.m12 * v.d2,
            self.m12 * v.d1 + self.m22 * v.d2,
        )
    }

    /// The quadratic form `vᵀ M v`.
    pub fn quad(&self, v: Vec2) -> f64 {
        v.dot(self.apply(v))
    }

    /// The bilinear form `vᵀ M w`.
    pub fn bilinear(&self, v: Vec2, w: Vec2) -> f64 {
        v.dot(self.apply(w))
    }

    /// Inverse, or `None` when the matrix is singular.
    pub fn inverse(&self) -> Option<Sym2> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        Some(Sym2::new(self.m22 / d, -self.m12 / d, self.m11 / d))
    }

    pub fn as_rows(&self) -> [[f64; 2]; 2] {
        [[self.m11, self.m12], [self.m12, self.m22]]
    }

    /// Largest absolute entry; used for relative comparisons.
    pub fn max_abs(&self) -> f64 {
        self.m11.abs().max(self.m12.abs()).max(self.m22.abs())
    }
}

impl Add for Sym2 {
    type Output = Sym2;
    fn add(self, o: Sym2) -> Sym2 {
        Sym2::new(self.m11 + o.m11, self.m12 + o.m12, self.m22 + o.m22)
    }
}

impl Sub for Sym2 {
    type Output = Sym2;
    fn sub(self, o: Sym2) -> Sym2 {
        Sym2::new(self.m11 - o.m11, self.m12 - o.m12, self.m22 - o.m22)
    }
}

impl Mul<Sym2> for f64 {
    type Output = Sym2;
    fn mul(self, m: Sym2) -> Sym2 {
        Sym2::new(self * m.m11, self * m.m12, self * m.m22)
    }
}
