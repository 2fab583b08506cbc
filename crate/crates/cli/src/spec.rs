//! Ring documents: a JSON description of a construction, an optional
//! endomorphism and optional check parameters.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use skewring::endo::{lift_endo_matrix, Endo};
use skewring::radical::IdealSet;
use skewring::ring::{
    build_corner, build_from_tables, build_full_matrix, build_gf4, build_product, build_quotient,
    build_trivial_extension, build_truncated_poly, build_upper_triangular, build_zn, Shape,
};
use skewring::{prime_radical, Elem, FiniteRing};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endo: Option<EndoSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum RingSpec {
    Zn {
        n: usize,
    },
    GF4,
    #[serde(rename = "product")]
    Product {
        left: Box<RingSpec>,
        right: Box<RingSpec>,
    },
    Un {
        base: Box<RingSpec>,
        n: usize,
    },
    Mn {
        base: Box<RingSpec>,
        n: usize,
    },
    #[serde(rename = "trunc")]
    Trunc {
        base: Box<RingSpec>,
        n: usize,
    },
    #[serde(rename = "trivialext")]
    TrivialExt {
        base: Box<RingSpec>,
    },
    #[serde(rename = "quotient")]
    Quotient {
        base: Box<RingSpec>,
        ideal: IdealSpec,
    },
    #[serde(rename = "corner")]
    Corner {
        base: Box<RingSpec>,
        e: Elem,
    },
    #[serde(rename = "tables")]
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum IdealName {
    #[serde(rename = "radical")]
    Radical,
}

/// `"radical"` or a list of generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealSpec {
    Named(IdealName),
    Generators(Vec<Elem>),
}

/// `"id"`, `"swap"`, `"frobenius"`, an image array, or `{"lift": ...}` to
/// apply a base endomorphism entrywise.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EndoSpec {
    Named(String),
    Image(Vec<Elem>),
    Lift(LiftSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftSpec {
    pub lift: Box<EndoSpec>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSpec {
    pub property: Option<String>,
    pub degree: Option<usize>,
    pub cap: Option<u64>,
    pub mode: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
}

pub fn load(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse(text: &str) -> Result<Document> {
    Ok(serde_json::from_str(text)?)
}

pub fn build_ring(spec: &RingSpec) -> Result<Arc<FiniteRing>> {
    let ring = match spec {
        RingSpec::Zn { n } => build_zn(*n)?,
        RingSpec::GF4 => build_gf4(),
        RingSpec::Product { left, right } => {
            build_product(&build_ring(left)?, &build_ring(right)?)?
        }
        RingSpec::Un { base, n } => build_upper_triangular(&build_ring(base)?, *n)?,
        RingSpec::Mn { base, n } => build_full_matrix(&build_ring(base)?, *n)?,
        RingSpec::Trunc { base, n } => build_truncated_poly(&build_ring(base)?, *n)?,
        RingSpec::TrivialExt { base } => build_trivial_extension(&build_ring(base)?)?,
        RingSpec::Quotient { base, ideal } => {
            let base = build_ring(base)?;
            let ideal = build_ideal(&base, ideal)?;
            build_quotient(&base, &ideal)?.0
        }
        RingSpec::Corner { base, e } => {
            let base = build_ring(base)?;
            check_elem(&base, *e)?;
            build_corner(&base, *e)?
        }
        RingSpec::Tables { add, mul, name } => build_from_tables(
            add.clone(),
            mul.clone(),
            name.as_deref().unwrap_or("tables"),
        )?,
    };
    Ok(ring)
}

fn check_elem(ring: &FiniteRing, e: Elem) -> Result<()> {
    if (e as usize) < ring.size() {
        Ok(())
    } else {
        bail!(
            "element {e} out of range for {} (size {})",
            ring.provenance(),
            ring.size()
        )
    }
}

fn build_ideal(ring: &Arc<FiniteRing>, spec: &IdealSpec) -> Result<IdealSet> {
    match spec {
        IdealSpec::Named(IdealName::Radical) => Ok(prime_radical(ring)?),
        IdealSpec::Generators(gens) => {
            for &g in gens {
                check_elem(ring, g)?;
            }
            Ok(IdealSet::generated_by(ring, gens))
        }
    }
}

pub fn build_endo(ring: &Arc<FiniteRing>, spec: Option<&EndoSpec>) -> Result<Endo> {
    let Some(spec) = spec else {
        return Ok(Endo::identity(ring));
    };
    let endo = match spec {
        EndoSpec::Named(name) => match name.as_str() {
            "id" => Endo::identity(ring),
            "swap" => swap(ring)?,
            "frobenius" => {
                let image = ring.elements().map(|a| ring.mul(a, a)).collect();
                Endo::new(ring, image, "frobenius").context("squaring is not an endomorphism of this ring")?
            }
            other => bail!("unknown endomorphism name {other:?} (expected id, swap, frobenius, an image array or a lift)"),
        },
        EndoSpec::Image(image) => {
            if image.len() != ring.size() {
                bail!("endomorphism image has {} entries, ring has {} elements", image.len(), ring.size());
            }
            let label = if image.iter().enumerate().all(|(i, &e)| i == e as usize) { "id" } else { "custom" };
            Endo::new(ring, image.clone(), label)?
        }
        EndoSpec::Lift(LiftSpec { lift }) => {
            let base = match ring.shape() {
                Shape::UpperTriangular { base, .. }
                | Shape::FullMatrix { base, .. }
                | Shape::Truncated { base, .. }
                | Shape::TrivialExtension { base } => base.clone(),
                _ => bail!("lift needs a matrix, truncated or trivial extension ring, got {}", ring.provenance()),
            };
            let inner = build_endo(&base, Some(lift))?;
            lift_endo_matrix(&inner, ring)?
        }
    };
    Ok(endo)
}

fn swap(ring: &Arc<FiniteRing>) -> Result<Endo> {
    let Shape::Product { left, right } = ring.shape() else {
        bail!("swap needs a product ring, got {}", ring.provenance());
    };
    if !left.same_tables(right) {
        bail!("swap needs equal factors, got {}", ring.provenance());
    }
    let image = ring
        .elements()
        .map(|e| {
            let (a, b) = ring.split_pair(e).expect("product element");
            ring.pair(b, a).ok_or_else(|| anyhow!("pair out of range"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Endo::new(ring, image, "swap")?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_documents_build() {
        let doc = parse(r#"{"ring": {"kind": "Un", "n": 2, "base": {"kind": "product", "left": {"kind": "Zn", "n": 2}, "right": {"kind": "Zn", "n": 2}}}, "endo": {"lift": "swap"}}"#).unwrap();
        let ring = build_ring(&doc.ring).unwrap();
        assert_eq!(ring.size(), 64);
        let alpha = build_endo(&ring, doc.endo.as_ref()).unwrap();
        assert!(!alpha.is_identity());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse(r#"{"ring": {"kind": "Zn", "n": 4, "m": 1}}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"), "{err}");
        assert!(parse(r#"{"ring": {"kind": "Zn", "n": 4}, "extra": 1}"#).is_err());
        assert!(parse(r#"{"ring": {"kind": "Qn", "n": 4}}"#).is_err());
    }

    #[test]
    fn quotients_and_corners() {
        let doc = parse(
            r#"{"ring": {"kind": "quotient", "base": {"kind": "Zn", "n": 8}, "ideal": "radical"}}"#,
        )
        .unwrap();
        assert_eq!(build_ring(&doc.ring).unwrap().size(), 2);
        let doc = parse(
            r#"{"ring": {"kind": "quotient", "base": {"kind": "Zn", "n": 8}, "ideal": [4]}}"#,
        )
        .unwrap();
        assert_eq!(build_ring(&doc.ring).unwrap().size(), 4);
        let doc = parse(r#"{"ring": {"kind": "corner", "base": {"kind": "Zn", "n": 6}, "e": 3}}"#)
            .unwrap();
        assert_eq!(build_ring(&doc.ring).unwrap().size(), 2);
    }

    #[test]
    fn bad_endomorphisms_are_reported() {
        let z4 = build_zn(4).unwrap();
        assert!(build_endo(&z4, Some(&EndoSpec::Named("swap".into()))).is_err());
        assert!(build_endo(&z4, Some(&EndoSpec::Image(vec![0, 1, 2]))).is_err());
        assert!(build_endo(&z4, Some(&EndoSpec::Image(vec![0, 1, 2, 3])))
            .unwrap()
            .is_identity());
        assert!(build_endo(&z4, Some(&EndoSpec::Image(vec![0, 3, 2, 1]))).is_err());
    }
}
