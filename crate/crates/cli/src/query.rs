//! Corpus search queries: catalog names joined by `&`, each optionally
//! negated with `!`, e.g. `alpha-almost-armendariz & !alpha-rigid`.

use anyhow::{bail, Result};
use skewring::Property;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub name: String,
    pub property: Property,
    /// The catalog name fixes the endomorphism to the identity.
    pub identity: bool,
    pub negated: bool,
}

pub fn parse(query: &str) -> Result<Vec<Term>> {
    let normalized = query.replace('∧', "&").replace('¬', "!");
    let mut terms = Vec::new();
    for raw in normalized.split('&') {
        let raw = raw.trim();
        let (negated, name) = match raw.strip_prefix('!') {
            Some(rest) => (true, rest.trim()),
            None => (false, raw),
        };
        if name.is_empty() {
            bail!("empty term in query {query:?}");
        }
        let Some((property, identity)) = Property::parse(name) else {
            bail!("unknown property {name:?} in query");
        };
        terms.push(Term {
            name: name.to_string(),
            property,
            identity,
            negated,
        });
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunctions_and_negations() {
        let t = parse("alpha-almost-armendariz & !alpha-rigid").unwrap();
        assert_eq!(t.len(), 2);
        assert!(!t[0].negated && t[1].negated);
        assert_eq!(t[1].property, Property::Rigid);
        let u = parse("alpha-almost-armendariz ∧ ¬alpha-rigid").unwrap();
        assert_eq!(t, u);
    }

    #[test]
    fn bad_queries() {
        assert!(parse("").is_err());
        assert!(parse("reduced & ").is_err());
        assert!(parse("mccoy").is_err());
    }
}
