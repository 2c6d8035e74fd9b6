//! Monotone maps between ordinals and the admissible normal form of
//! degeneracy composites.
//!
//! A surjection `[m] -> [k]` is stored as a bit mask over `0..m`: bit `j` is
//! set iff `σ(j) == σ(j + 1)`. The set bits are exactly the indices of the
//! admissible word `s_{i_k} ... s_{i_1}` (`i_k > ... > i_1`).

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest simplicial dimension supported by the mask encoding.
pub const MAX_DIM: usize = 31;

pub(crate) type Values = SmallVec<[u8; 8]>;

/// An admissible degeneracy word, indices strictly decreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
    pub fn identity() -> Self {
        DegeneracyWord(Vec::new())
    }

    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Word(format!(
                "degeneracy indices must be strictly decreasing, got {indices:?}"
            )));
        }
        if indices.first().is_some_and(|&i| i >= MAX_DIM) {
            return Err(Error::Word(format!("degeneracy index too large in {indices:?}")));
        }
        Ok(DegeneracyWord(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Mask form, valid when applied to a simplex whose result has dimension `dim`.
    pub fn to_mask(&self, dim: usize) -> Result<u32> {
        let mut mask = 0u32;
        for &i in &self.0 {
            if i >= dim {
                return Err(Error::Word(format!(
                    "s_{i} cannot produce a simplex of dimension {dim}"
                )));
            }
            mask |= 1 << i;
        }
        Ok(mask)
    }

    pub fn from_mask(mask: u32) -> Self {
        let mut v: Vec<usize> = (0..32).filter(|j| mask & (1 << j) != 0).collect();
        v.reverse();
        DegeneracyWord(v)
    }
}

/// `σ(i)` for the surjection encoded by `mask`.
#[inline]
pub fn surj_value(mask: u32, i: usize) -> usize {
    let below = if i >= 32 { mask } else { mask & ((1u32 << i) - 1) };
    i - below.count_ones() as usize
}

/// Values of the surjection `[dim] -> [dim - |mask|]`.
#[cfg(test)]
pub(crate) fn surj_values(dim: usize, mask: u32) -> Values {
    (0..=dim).map(|i| surj_value(mask, i) as u8).collect()
}

/// Mask of `σ_y ∘ σ_x` where `σ_x` has mask `mask_x` and `σ_y` has mask `mask_y`.
#[inline]
pub fn compose_masks(dim_x: usize, mask_x: u32, mask_y: u32) -> u32 {
    let mut out = mask_x;
    for j in 0..dim_x {
        if mask_x & (1 << j) == 0 && mask_y & (1 << surj_value(mask_x, j)) != 0 {
            out |= 1 << j;
        }
    }
    out
}

/// Epi–mono factorization of a monotone map given by its values.
/// Returns the surjection mask over `[values.len() - 1]` and the sorted image.
pub(crate) fn epi_mono(values: &[u8]) -> (u32, Values) {
    let mut mask = 0u32;
    let mut image: Values = SmallVec::new();
    for (i, &v) in values.iter().enumerate() {
        if i > 0 && values[i - 1] == v {
            mask |= 1 << (i - 1);
        } else {
            image.push(v);
        }
    }
    (mask, image)
}

/// Values of the coface `δ^i : [m - 1] -> [m]`.
pub(crate) fn coface(m: usize, i: usize) -> Values {
    (0..m).map(|j| if j < i { j as u8 } else { (j + 1) as u8 }).collect()
}

/// Values of the codegeneracy `σ^j : [m + 1] -> [m]`.
pub(crate) fn codegeneracy(m: usize, j: usize) -> Values {
    (0..=m + 1)
        .map(|i| if i <= j { i as u8 } else { (i - 1) as u8 })
        .collect()
}

/// All surjection masks `[m] -> [k]`, in increasing numeric order.
pub(crate) fn surjection_masks(m: usize, k: usize) -> Vec<u32> {
    let ones = m - k;
    let mut out = Vec::new();
    if m == 0 {
        out.push(0);
        return out;
    }
    for mask in 0u32..(1u32 << m) {
        if mask.count_ones() as usize == ones {
            out.push(mask);
        }
    }
    out
}

/// Mask of the surjection obtained by deleting the positions set in `common`
/// from a mask `mask` over `[dim]` whose set bits include `common`.
pub(crate) fn quotient_mask(dim: usize, mask: u32, common: u32) -> u32 {
    let mut out = 0u32;
    let mut pos = 0usize;
    for j in 0..dim {
        if common & (1 << j) != 0 {
            continue;
        }
        if mask & (1 << j) != 0 {
            out |= 1 << pos;
        }
        pos += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_mask_round_trip() {
        let w = DegeneracyWord::new(vec![2, 0]).unwrap();
        let m = w.to_mask(3).unwrap();
        assert_eq!(m, 0b101);
        assert_eq!(DegeneracyWord::from_mask(m), w);
        assert!(DegeneracyWord::new(vec![0, 2]).is_err());
        assert!(DegeneracyWord::new(vec![1, 1]).is_err());
    }

    #[test]
    fn surjection_values() {
        assert_eq!(surj_values(3, 0b101).as_slice(), &[0, 0, 1, 1]);
        assert_eq!(surj_values(2, 0).as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn composition_matches_values() {
        // σ_x: [3] -> [2] merging 1,2 ; σ_y: [2] -> [1] merging 0,1
        let mx = 0b010;
        let my = 0b01;
        let c = compose_masks(3, mx, my);
        let vx = surj_values(3, mx);
        let direct: Vec<usize> = vx.iter().map(|&v| surj_value(my, v as usize)).collect();
        assert_eq!(surj_values(3, c).iter().map(|&v| v as usize).collect::<Vec<_>>(), direct);
    }

    #[test]
    fn epi_mono_factor() {
        let (mask, image) = epi_mono(&[0, 0, 2, 3, 3]);
        assert_eq!(mask, 0b1001);
        assert_eq!(image.as_slice(), &[0, 2, 3]);
    }

    #[test]
    fn counts() {
        assert_eq!(surjection_masks(4, 2).len(), 6);
    }
}
