//! JSON file formats.
//!
//! * coefficients: `{"l_max": N, "entries": [{"l", "m", "re", "im"}]}`, `im` omitted for real vectors
//! * grid samples: `{"m", "nodes", "weights", "values"}`
//! * channel spectra: `{"m", "basis": "orthonormal", "coeffs": [{"l", "c"}]}`
//! * sphere fields: `{"theta_nodes", "phi_count", "values": [[re, im], ...]}` row-major in `theta`
//!
//! Entries are always written in canonical `(l, m)` order so files are byte-stable.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{CoeffVector, ModeIndex, Truncation};
use crate::quadrature::{gauss_legendre, GridFunction, QuadratureRule};
use crate::sphere::{SphereField, SphereGrid};
use crate::transforms::ChannelSpectrum;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub l: i64,
    pub m: i64,
    pub re: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffFile {
    pub l_max: i64,
    pub entries: Vec<CoeffEntry>,
}

/// A coefficient file decoded as real when no entry carries `im`.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients {
    Real(CoeffVector<f64>),
    Complex(CoeffVector<Complex64>),
}

impl CoeffFile {
    pub fn from_real(v: &CoeffVector<f64>) -> Self {
        CoeffFile {
            l_max: v.truncation().l_max,
            entries: v
                .iter()
                .map(|(md, re)| CoeffEntry {
                    l: md.l,
                    m: md.m,
                    re,
                    im: None,
                })
                .collect(),
        }
    }

    pub fn from_complex(v: &CoeffVector<Complex64>) -> Self {
        CoeffFile {
            l_max: v.truncation().l_max,
            entries: v
                .iter()
                .map(|(md, c)| CoeffEntry {
                    l: md.l,
                    m: md.m,
                    re: c.re,
                    im: Some(c.im),
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<Coefficients> {
        let t = Truncation::new(self.l_max)?;
        if self.entries.iter().all(|e| e.im.is_none()) {
            let mut v = CoeffVector::zeros(t);
            for e in &self.entries {
                v.accumulate(ModeIndex::new(e.l, e.m)?, e.re)?;
            }
            Ok(Coefficients::Real(v))
        } else {
            let mut v = CoeffVector::zeros(t);
            for e in &self.entries {
                v.accumulate(
                    ModeIndex::new(e.l, e.m)?,
                    Complex64::new(e.re, e.im.unwrap_or(0.0)),
                )?;
            }
            Ok(Coefficients::Complex(v))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFile {
    pub m: i64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<f64>,
}

impl GridFile {
    pub fn from_grid(g: &GridFunction) -> Self {
        GridFile {
            m: g.m,
            nodes: g.rule.nodes().to_vec(),
            weights: g.rule.weights().to_vec(),
            values: g.values.clone(),
        }
    }

    pub fn decode(&self) -> Result<GridFunction> {
        let rule = QuadratureRule::from_parts(self.nodes.clone(), self.weights.clone())?;
        GridFunction::new(rule, self.m, self.values.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCoeff {
    pub l: i64,
    pub c: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub m: i64,
    pub basis: String,
    pub coeffs: Vec<SpectrumCoeff>,
}

impl SpectrumFile {
    pub const BASIS: &'static str = "orthonormal";

    pub fn from_spectrum(s: &ChannelSpectrum) -> Self {
        SpectrumFile {
            m: s.m,
            basis: Self::BASIS.to_string(),
            coeffs: s.iter().map(|(l, c)| SpectrumCoeff { l, c }).collect(),
        }
    }

    /// `l_max` is the largest listed degree (or `|m|` for an empty list).
    pub fn decode(&self) -> Result<ChannelSpectrum> {
        if self.basis != Self::BASIS {
            return Err(Error::Usage(format!(
                "unsupported spectrum basis '{}', expected '{}'",
                self.basis,
                Self::BASIS
            )));
        }
        let l_max = self
            .coeffs
            .iter()
            .map(|c| c.l)
            .max()
            .unwrap_or(self.m.abs());
        ChannelSpectrum::from_coeffs(self.m, l_max, self.coeffs.iter().map(|c| (c.l, c.c)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldFile {
    pub theta_nodes: Vec<f64>,
    pub phi_count: usize,
    pub values: Vec<[f64; 2]>,
}

impl FieldFile {
    pub fn from_field(f: &SphereField) -> Self {
        FieldFile {
            theta_nodes: f.grid.thetas(),
            phi_count: f.grid.n_phi,
            values: f.values.iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    /// Rebuilds the grid; the polar nodes must be the Gauss-Legendre nodes
    /// (in `cos theta`) of the same count.
    pub fn decode(&self) -> Result<SphereField> {
        let rule = gauss_legendre(self.theta_nodes.len())?;
        for (t, x) in self.theta_nodes.iter().zip(rule.nodes()) {
            if (t.cos() - x).abs() > 1e-12 {
                return Err(Error::Usage(format!(
                    "theta node {t} is not a Gauss-Legendre node of order {}",
                    rule.order()
                )));
            }
        }
        let grid = SphereGrid::from_rule(rule, self.phi_count)?;
        let values = self
            .values
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        SphereField::new(grid, values)
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize, P: AsRef<Path>>(path: P, value: &T) -> Result<()> {
    fs::write(path, to_json_string(value)?)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned, P: AsRef<Path>>(path: P) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn real_vectors_omit_im() {
        let t = Truncation::new(2).unwrap();
        let v = CoeffVector::<f64>::unit(t, 1, -1).unwrap().scaled(0.5);
        let s = serde_json::to_string(&CoeffFile::from_real(&v)).unwrap();
        assert_eq!(s, r#"{"l_max":2,"entries":[{"l":1,"m":-1,"re":0.5}]}"#);
        match CoeffFile::from_real(&v).decode().unwrap() {
            Coefficients::Real(w) => assert_eq!(w, v),
            _ => panic!("expected real"),
        }
    }

    #[test]
    fn bad_entries_are_rejected() {
        let f = CoeffFile {
            l_max: 1,
            entries: vec![CoeffEntry { l: 1, m: 2, re: 1.0, im: None }],
        };
        assert!(f.decode().is_err());
        let f = CoeffFile {
            l_max: 1,
            entries: vec![CoeffEntry { l: 2, m: 0, re: 1.0, im: None }],
        };
        assert!(f.decode().is_err());
        let s = SpectrumFile { m: 0, basis: "T".into(), coeffs: vec![] };
        assert!(s.decode().is_err());
    }

    #[test]
    fn field_nodes_must_be_gauss_nodes() {
        let grid = SphereGrid::new(4, 5).unwrap();
        let mut file = FieldFile::from_field(&SphereField::zeros(&grid));
        assert!(file.decode().is_ok());
        file.theta_nodes[0] += 1e-3;
        assert!(file.decode().is_err());
    }

    proptest! {
        #[test]
        fn complex_coefficients_round_trip(values in proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 16)) {
            let t = Truncation::new(3).unwrap();
            let mut v = CoeffVector::<Complex64>::zeros(t);
            for (md, (re, im)) in t.lattice().into_iter().zip(values) {
                v.set(md, Complex64::new(re, im)).unwrap();
            }
            let text = to_json_string(&CoeffFile::from_complex(&v)).unwrap();
            let back: CoeffFile = serde_json::from_str(&text).unwrap();
            match back.decode().unwrap() {
                Coefficients::Complex(w) => prop_assert_eq!(w, v),
                Coefficients::Real(_) => prop_assert!(false, "decoded as real"),
            }
        }
    }
}
