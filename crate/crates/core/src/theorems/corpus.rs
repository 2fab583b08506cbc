//! The shipped set of `(ring, endomorphism)` pairs the conformance checks run over.

use std::fmt;
use std::sync::Arc;

use crate::endo::{lift_endo_matrix, Endo};
use crate::ring::{
    build_full_matrix, build_gf4, build_product, build_trivial_extension, build_truncated_poly,
    build_upper_triangular, build_zn, FiniteRing,
};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub alpha: Endo,
}

impl CorpusEntry {
    pub fn new(alpha: Endo) -> CorpusEntry {
        CorpusEntry { alpha }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.alpha.ring()
    }

    pub fn label(&self) -> String {
        format!("({}, {})", self.ring().provenance(), self.alpha.label())
    }
}

impl fmt::Display for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.iter()
    }

    /// Entries whose label contains `needle`.
    pub fn filter(&self, needle: &str) -> Corpus {
        Corpus {
            entries: self
                .entries
                .iter()
                .filter(|e| e.label().contains(needle))
                .cloned()
                .collect(),
        }
    }
}

/// Images of the four unital endomorphisms of `Z2 x Z2`, with readable labels.
const PAIR_ENDOS: [([u16; 4], &str); 4] = [
    ([0, 1, 2, 3], "id"),
    ([0, 2, 1, 3], "swap"),
    ([0, 0, 3, 3], "diag1"),
    ([0, 3, 0, 3], "diag2"),
];

pub fn corpus_default() -> Corpus {
    let z2 = build_zn(2).unwrap();
    let z4 = build_zn(4).unwrap();
    let mut entries: Vec<CorpusEntry> = [2usize, 3, 4, 6, 8]
        .iter()
        .map(|&n| CorpusEntry::new(Endo::identity(&build_zn(n).unwrap())))
        .collect();
    let pair = build_product(&z2, &z2).unwrap();
    for (image, label) in PAIR_ENDOS {
        entries.push(CorpusEntry::new(
            Endo::new(&pair, image.to_vec(), label).unwrap(),
        ));
    }
    let gf4 = build_gf4();
    entries.push(CorpusEntry::new(Endo::identity(&gf4)));
    // a -> a^2 swaps w and w + 1
    entries.push(CorpusEntry::new(
        Endo::new(&gf4, vec![0, 1, 3, 2], "frobenius").unwrap(),
    ));
    let lifted = |base: &Arc<FiniteRing>, target: Arc<FiniteRing>| {
        CorpusEntry::new(lift_endo_matrix(&Endo::identity(base), &target).unwrap())
    };
    entries.push(lifted(&z2, build_upper_triangular(&z2, 2).unwrap()));
    entries.push(lifted(&z4, build_upper_triangular(&z4, 2).unwrap()));
    entries.push(lifted(&z2, build_full_matrix(&z2, 2).unwrap()));
    entries.push(lifted(&z4, build_trivial_extension(&z4).unwrap()));
    entries.push(lifted(&z2, build_truncated_poly(&z2, 3).unwrap()));
    Corpus { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_is_valid() {
        let c = corpus_default();
        assert_eq!(c.len(), 16);
        for e in c.iter() {
            assert!(e.ring().validate().is_ok(), "{e}");
        }
        let labels: Vec<String> = c.iter().map(|e| e.label()).collect();
        assert!(labels.contains(&"(product(Z2,Z2), swap)".to_string()));
        assert!(labels.contains(&"(M2(Z2), id)".to_string()));
    }
}
