//! Complex numbers on the wire as `[re, im]` arrays.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{CMat4, CVec4, C64};

pub fn to_pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn from_pair(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

pub fn vec4_to_pairs(v: &CVec4) -> [[f64; 2]; 4] {
    std::array::from_fn(|i| to_pair(v[i]))
}

pub fn vec4_from_pairs(p: &[[f64; 2]; 4]) -> CVec4 {
    CVec4::from_fn(|i, _| from_pair(p[i]))
}

/// Row-major nested arrays.
pub fn mat4_to_pairs(m: &CMat4) -> [[[f64; 2]; 4]; 4] {
    std::array::from_fn(|r| std::array::from_fn(|c| to_pair(m[(r, c)])))
}

/// `#[serde(with = "complex_serde::pair")]` for a single `C64` field.
pub mod pair {
    use super::*;

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        to_pair(*z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        <[f64; 2]>::deserialize(d).map(from_pair)
    }
}

/// `#[serde(with = "complex_serde::pairs")]` for fixed-size arrays of `C64`.
pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer, const N: usize>(z: &[C64; N], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<[f64; 2]> = z.iter().copied().map(to_pair).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[C64; N], D::Error> {
        let v = Vec::<[f64; 2]>::deserialize(d)?;
        let len = v.len();
        let arr: [[f64; 2]; N] = v
            .try_into()
            .map_err(|_| serde::de::Error::invalid_length(len, &"a fixed-length array of [re, im] pairs"))?;
        Ok(arr.map(from_pair))
    }
}
