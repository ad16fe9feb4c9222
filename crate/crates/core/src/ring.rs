//! Integer group ring vectors: multisets over a finite group, closed under
//! convolution. These carry the quotient multisets that every balance
//! verdict is computed from.

use std::fmt;

use crate::group::{Group, GroupError};

/// An integer multiset over a group: `counts[i]` is the multiplicity of the
/// element with canonical index i. Negative counts are permitted (the ring
/// is `Z[G]`), though the verifiers only ever produce nonnegative measures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingVector {
    group: Group,
    counts: Vec<i64>,
}

impl GroupRingVector {
    pub fn zero(group: &Group) -> GroupRingVector {
        GroupRingVector {
            group: group.clone(),
            counts: vec![0; group.order() as usize],
        }
    }

    /// The delta at a single element.
    pub fn delta(group: &Group, index: u32) -> GroupRingVector {
        let mut v = GroupRingVector::zero(group);
        v.counts[index as usize] = 1;
        v
    }

    pub fn from_counts(group: &Group, counts: Vec<i64>) -> GroupRingVector {
        assert_eq!(counts.len(), group.order() as usize);
        GroupRingVector {
            group: group.clone(),
            counts,
        }
    }

    /// Indicator vector of a subset of element indexes.
    pub fn indicator(group: &Group, elements: &[u32]) -> GroupRingVector {
        let mut v = GroupRingVector::zero(group);
        for &e in elements {
            v.counts[e as usize] += 1;
        }
        v
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn count(&self, index: u32) -> i64 {
        self.counts[index as usize]
    }

    pub fn add_element(&mut self, index: u32) {
        self.counts[index as usize] += 1;
    }

    pub fn total(&self) -> i64 {
        self.counts.iter().sum()
    }

    pub fn add(&self, rhs: &GroupRingVector) -> Result<GroupRingVector, GroupError> {
        self.check_group(rhs)?;
        Ok(GroupRingVector {
            group: self.group.clone(),
            counts: self
                .counts
                .iter()
                .zip(&rhs.counts)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, by: i64) -> GroupRingVector {
        GroupRingVector {
            group: self.group.clone(),
            counts: self.counts.iter().map(|c| c * by).collect(),
        }
    }

    /// Convolution: counts of all products x_g * y_h, with y inverted
    /// elementwise first when `invert_rhs` is set. With inversion this is the
    /// inner-product multiset engine for group-developed rows.
    pub fn convolve(
        &self,
        rhs: &GroupRingVector,
        invert_rhs: bool,
    ) -> Result<GroupRingVector, GroupError> {
        self.check_group(rhs)?;
        let g = &self.group;
        let mut out = GroupRingVector::zero(g);
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.counts.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let rhs_elem = if invert_rhs {
                    g.inv(j as u32)
                } else {
                    j as u32
                };
                out.counts[g.mul(i as u32, rhs_elem) as usize] += a * b;
            }
        }
        Ok(out)
    }

    /// Some(c) when every element has the same multiplicity c.
    pub fn uniform_multiplicity(&self) -> Option<i64> {
        let first = self.counts[0];
        self.counts.iter().all(|&c| c == first).then_some(first)
    }

    fn check_group(&self, rhs: &GroupRingVector) -> Result<(), GroupError> {
        if self.group != rhs.group {
            return Err(GroupError::MixedGroups {
                left: self.group.descriptor(),
                right: rhs.group.descriptor(),
            });
        }
        Ok(())
    }
}

/// Convolution as a free function, mirroring the other ring operations.
pub fn ring_convolve(
    x: &GroupRingVector,
    y: &GroupRingVector,
    invert_y: bool,
) -> Result<GroupRingVector, GroupError> {
    x.convolve(y, invert_y)
}

impl fmt::Display for GroupRingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}", c, self.group.token(i as u32))?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}
