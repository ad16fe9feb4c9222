//! Integer quaternions with exact Hamilton products.

use std::fmt;

/// A quaternion w + xi + yj + zk with integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub w: i64,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Quaternion {
    pub const fn new(w: i64, x: i64, y: i64, z: i64) -> Quaternion {
        Quaternion { w, x, y, z }
    }

    pub const fn zero() -> Quaternion {
        Quaternion::new(0, 0, 0, 0)
    }

    pub const fn one() -> Quaternion {
        Quaternion::new(1, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        *self == Quaternion::zero()
    }

    /// Hamilton product, using i^2 = j^2 = k^2 = ijk = -1.
    pub fn mul(&self, r: &Quaternion) -> Quaternion {
        Quaternion {
            w: self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            x: self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            y: self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            z: self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        }
    }

    /// Conjugation negates the i, j, k coordinates.
    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn neg(&self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }

    pub fn add(&self, r: &Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }

    pub fn norm(&self) -> i64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }
}

/// Product x*y, conjugating y first when `conjugate_y` is set.
pub fn quat_mul(x: &Quaternion, y: &Quaternion, conjugate_y: bool) -> Quaternion {
    if conjugate_y {
        x.mul(&y.conj())
    } else {
        x.mul(y)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (v, unit) in [(self.w, ""), (self.x, "i"), (self.y, "j"), (self.z, "k")] {
            if v == 0 {
                continue;
            }
            if first {
                if v < 0 {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if v < 0 { " - " } else { " + " })?;
            }
            let mag = v.unsigned_abs();
            if mag != 1 || unit.is_empty() {
                write!(f, "{}", mag)?;
            }
            f.write_str(unit)?;
        }
        Ok(())
    }
}
