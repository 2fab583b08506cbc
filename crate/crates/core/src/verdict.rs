//! Property identifiers and the verdicts produced by the checkers.

use std::fmt;
use std::sync::Arc;

use crate::endo::Endo;
use crate::ring::{Elem, FiniteRing};

/// Which coefficient products a zero-product property constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Twist {
    /// `a_i b_j`
    Plain,
    /// `a_i alpha^i(b_j)`
    Skew,
}

/// Where the constrained products must land.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Zero,
    Radical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Reduced,
    Reversible,
    Semicommutative,
    Compatible,
    /// `ab = 0` implies `a alpha(b) = 0`.
    HalfCompatible,
    Rigid,
    StarRigid,
    /// Zero products in the skew polynomial ring force the twisted or plain
    /// coefficient products to zero or into the prime radical.
    ZeroProduct {
        twist: Twist,
        target: Target,
    },
}

/// Name, whether the identity endomorphism is implied, and a short gloss.
const CATALOG: &[(&str, Property, bool, &str)] = &[
    (
        "reduced",
        Property::Reduced,
        false,
        "no nonzero nilpotent elements",
    ),
    (
        "reversible",
        Property::Reversible,
        false,
        "ab = 0 implies ba = 0",
    ),
    (
        "semicommutative",
        Property::Semicommutative,
        false,
        "ab = 0 implies arb = 0 for all r",
    ),
    (
        "alpha-compatible",
        Property::Compatible,
        false,
        "ab = 0 iff a alpha(b) = 0",
    ),
    (
        "alpha-half-compatible",
        Property::HalfCompatible,
        false,
        "ab = 0 implies a alpha(b) = 0",
    ),
    (
        "alpha-rigid",
        Property::Rigid,
        false,
        "a alpha(a) = 0 implies a = 0",
    ),
    (
        "alpha-star-rigid",
        Property::StarRigid,
        false,
        "a alpha(a) in N* implies a in N*",
    ),
    (
        "armendariz",
        Property::ZeroProduct {
            twist: Twist::Plain,
            target: Target::Zero,
        },
        true,
        "f g = 0 in R[x] implies a_i b_j = 0",
    ),
    (
        "almost-armendariz",
        Property::ZeroProduct {
            twist: Twist::Plain,
            target: Target::Radical,
        },
        true,
        "f g = 0 in R[x] implies a_i b_j in N*",
    ),
    (
        "alpha-armendariz",
        Property::ZeroProduct {
            twist: Twist::Plain,
            target: Target::Zero,
        },
        false,
        "f g = 0 in R[x;alpha] implies a_i b_j = 0",
    ),
    (
        "alpha-skew-armendariz",
        Property::ZeroProduct {
            twist: Twist::Skew,
            target: Target::Zero,
        },
        false,
        "f g = 0 in R[x;alpha] implies a_i alpha^i(b_j) = 0",
    ),
    (
        "alpha-almost-armendariz",
        Property::ZeroProduct {
            twist: Twist::Plain,
            target: Target::Radical,
        },
        false,
        "f g = 0 in R[x;alpha] implies a_i b_j in N*",
    ),
    (
        "alpha-skew-almost-armendariz",
        Property::ZeroProduct {
            twist: Twist::Skew,
            target: Target::Radical,
        },
        false,
        "f g = 0 in R[x;alpha] implies a_i alpha^i(b_j) in N*",
    ),
];

impl Property {
    pub const ALPHA_ALMOST: Property = Property::ZeroProduct {
        twist: Twist::Plain,
        target: Target::Radical,
    };
    pub const ALPHA_SKEW_ALMOST: Property = Property::ZeroProduct {
        twist: Twist::Skew,
        target: Target::Radical,
    };
    pub const ALPHA_ARMENDARIZ: Property = Property::ZeroProduct {
        twist: Twist::Plain,
        target: Target::Zero,
    };
    pub const ALPHA_SKEW_ARMENDARIZ: Property = Property::ZeroProduct {
        twist: Twist::Skew,
        target: Target::Zero,
    };

    /// Looks up a catalog name. The flag is set for names that fix the
    /// endomorphism to the identity.
    pub fn parse(name: &str) -> Option<(Property, bool)> {
        CATALOG
            .iter()
            .find(|(n, ..)| *n == name)
            .map(|&(_, p, id, _)| (p, id))
    }

    /// `(name, gloss)` for every catalog entry.
    pub fn catalog() -> impl Iterator<Item = (&'static str, &'static str)> {
        CATALOG.iter().map(|&(n, _, _, g)| (n, g))
    }

    /// Canonical name, with the endomorphism left explicit.
    pub fn name(&self) -> &'static str {
        CATALOG
            .iter()
            .find(|(_, p, id, _)| p == self && !id)
            .map(|(n, ..)| *n)
            .unwrap_or("unknown")
    }

    pub fn uses_endo(&self) -> bool {
        !matches!(
            self,
            Property::Reduced | Property::Reversible | Property::Semicommutative
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The ring (and endomorphism) a verdict is about.
#[derive(Clone, Debug)]
pub struct Subject {
    pub ring: Arc<FiniteRing>,
    pub endo: Option<Endo>,
}

impl Subject {
    pub fn describe(&self) -> String {
        match &self.endo {
            Some(e) => format!("({}, {})", self.ring.provenance(), e.label()),
            None => self.ring.provenance().to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Every candidate examined.
    Exhaustive,
    /// Exhaustive scan of `R / N*` plus a lifting search in `R`.
    RadicalQuotient,
    Randomized {
        seed: u64,
        samples: u64,
    },
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanMode::Exhaustive => f.write_str("exhaustive"),
            ScanMode::RadicalQuotient => f.write_str("radical-quotient"),
            ScanMode::Randomized { seed, samples } => {
                write!(f, "randomized(seed={seed}, samples={samples})")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub degree: Option<usize>,
    pub cap: u64,
    pub mode: ScanMode,
}

impl Params {
    pub fn elementwise() -> Params {
        Params {
            degree: None,
            cap: 0,
            mode: ScanMode::Exhaustive,
        }
    }
}

/// Certificate for a failed property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Offending elements, in the order the property names them.
    Elements { elems: Vec<Elem>, detail: String },
    /// `f g = 0` while the `(i, j)` coefficient product misses the target.
    Polynomials {
        f: Vec<Elem>,
        g: Vec<Elem>,
        i: usize,
        j: usize,
        product: Elem,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails(Witness),
    Unknown(String),
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub property: Property,
    pub subject: Subject,
    pub params: Params,
    pub outcome: Outcome,
    pub note: Option<String>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self.outcome, Outcome::Fails(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.outcome, Outcome::Unknown(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Fails(w) => Some(w),
            _ => None,
        }
    }

    /// `Some(true)` for holds, `Some(false)` for fails, `None` when unknown.
    pub fn as_bool(&self) -> Option<bool> {
        match self.outcome {
            Outcome::Holds => Some(true),
            Outcome::Fails(_) => Some(false),
            Outcome::Unknown(_) => None,
        }
    }

    /// One-word outcome plus the degree bound when there is one.
    pub fn outcome_label(&self) -> String {
        match (&self.outcome, self.params.degree) {
            (Outcome::Holds, Some(d)) => format!("holds up to degree {d}"),
            (Outcome::Holds, None) => "holds".into(),
            (Outcome::Fails(_), _) => "fails".into(),
            (Outcome::Unknown(r), _) => format!("unknown ({r})"),
        }
    }

    /// Witness rendered with the ring's element notation.
    pub fn describe_witness(&self) -> Option<String> {
        let ring = &self.subject.ring;
        let fmt_tuple = |t: &[Elem]| {
            let parts: Vec<String> = t.iter().map(|&e| ring.format_elem(e)).collect();
            format!("[{}]", parts.join(", "))
        };
        Some(match self.witness()? {
            Witness::Elements { elems, detail } => {
                format!("elements {}: {detail}", fmt_tuple(elems))
            }
            Witness::Polynomials {
                f,
                g,
                i,
                j,
                product,
            } => format!(
                "f = {}, g = {}, (i, j) = ({i}, {j}), offending product {}",
                fmt_tuple(f),
                fmt_tuple(g),
                ring.format_elem(*product)
            ),
        })
    }
}
