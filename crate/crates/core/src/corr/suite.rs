//! Exhaustive desk-scale checks of the structure theorems for finite `X`.

use std::collections::BTreeSet;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::{alpha, all_correspondences, all_maps, block, enumerate_automorphisms, minimal_ideal, schreier_extract};
use super::{Ambient, FiniteCorr, HomTable};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Schreier,
    Alpha,
    Blocks,
    Ideal,
    Aut,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Alpha, Suite::Aut, Suite::Blocks, Suite::Ideal, Suite::Schreier];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Schreier => "schreier",
            Suite::Alpha => "alpha",
            Suite::Blocks => "blocks",
            Suite::Ideal => "ideal",
            Suite::Aut => "aut",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub pass: bool,
    pub details: Map<String, Value>,
}

impl SuiteReport {
    /// The details with `pass` merged in.
    pub fn to_json(&self) -> Value {
        let mut m = self.details.clone();
        m.insert("pass".into(), Value::Bool(self.pass));
        Value::Object(m)
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("object literal"),
    }
}

pub fn verify_suite(n: usize, suite: Suite) -> Result<SuiteReport> {
    let (pass, details) = match suite {
        Suite::Aut => aut(n)?,
        Suite::Schreier => schreier(n)?,
        Suite::Alpha => alpha_suite(n)?,
        Suite::Blocks => blocks(n)?,
        Suite::Ideal => ideal(n)?,
    };
    Ok(SuiteReport { suite, n, pass, details })
}

fn aut(n: usize) -> Result<(bool, Map<String, Value>)> {
    let auts = enumerate_automorphisms(n, Ambient::MapX)?;
    let mut all_inner = true;
    for phi in &auts {
        let r = schreier_extract(phi)?;
        all_inner &= r.is_bijective && r.conjugation_verified;
    }
    let expected = factorial(n);
    let pass = auts.len() == expected && all_inner;
    Ok((pass, obj(json!({"automorphisms": auts.len(), "expected": expected, "all_inner": all_inner}))))
}

fn schreier(n: usize) -> Result<(bool, Map<String, Value>)> {
    let mut pass = true;
    let mut details = Map::new();
    let mut ambients = vec![Ambient::MapX];
    if n <= 3 {
        ambients.push(Ambient::CorrX);
    }
    for ambient in ambients {
        let auts = enumerate_automorphisms(n, ambient)?;
        let mut recovered = 0;
        let mut failure = Value::Null;
        for phi in &auts {
            // Re-validate the table independently of the search.
            let checked = HomTable::new(phi.domain().to_vec(), phi.images().to_vec())?;
            match schreier_extract(&checked) {
                Ok(r) if r.is_bijective && r.conjugation_verified => recovered += 1,
                Ok(r) => failure = json!({"report": r}),
                Err(e) => failure = json!({"error": e.to_string()}),
            }
        }
        let ok = recovered == auts.len() && auts.len() == factorial(n);
        pass &= ok;
        let key = match ambient {
            Ambient::MapX => "map",
            Ambient::CorrX => "corr",
        };
        let mut entry = json!({"automorphisms": auts.len(), "recovered": recovered, "pass": ok});
        if !failure.is_null() {
            entry["counterexample"] = failure;
        }
        details.insert(key.into(), entry);
    }
    let maps = all_maps(n)?;
    let id = HomTable::new(maps.clone(), maps)?;
    let identity_ok = schreier_extract(&id)?.point_map() == Some((0..n).collect());
    pass &= identity_ok;
    details.insert("identity_homomorphism".into(), Value::Bool(identity_ok));
    Ok((pass, details))
}

fn alpha_suite(n: usize) -> Result<(bool, Map<String, Value>)> {
    if n > 4 {
        return Err(Error::BudgetExceeded(format!("alpha suite on {n} points (limit 4)")));
    }
    let all = all_correspondences(n)?;
    let tables: Vec<Vec<FiniteCorr>> = all.par_iter().map(alpha).collect::<Result<_>>()?;
    let distinct: BTreeSet<&Vec<FiniteCorr>> = tables.iter().collect();
    let injective = distinct.len() == all.len();
    let ideal = minimal_ideal(n)?;
    let fixes_ideal = ideal.iter().all(|c| alpha(c).is_ok_and(|t| t.iter().all(|x| x == c)));
    let identity_ok = alpha(&FiniteCorr::identity(n)?)? == ideal;
    let pass = injective && fixes_ideal && identity_ok;
    Ok((
        pass,
        obj(json!({
            "correspondences": all.len(),
            "distinct_tables": distinct.len(),
            "injective": injective,
            "alpha_fixes_ideal": fixes_ideal,
            "alpha_identity": identity_ok,
        })),
    ))
}

/// `K2` surjective and `K1∘K2` a map force `K1` to be a map.
fn maps_corr_counterexample(all: &[FiniteCorr]) -> Option<(FiniteCorr, FiniteCorr)> {
    all.par_iter()
        .filter(|k2| k2.is_surjective())
        .find_map_first(|k2| {
            all.iter()
                .find(|k1| !k1.is_map() && k1.compose(k2).is_ok_and(|c| c.is_map()))
                .map(|k1| (k1.clone(), k2.clone()))
        })
}

fn blocks(n: usize) -> Result<(bool, Map<String, Value>)> {
    if n > 3 {
        return Err(Error::BudgetExceeded(format!("blocks suite on {n} points (limit 3)")));
    }
    let all = all_correspondences(n)?;
    let counter = maps_corr_counterexample(&all);
    let pairs = all.iter().filter(|k| k.is_surjective()).count() * all.len();

    // On a finite set a surjective map is a bijection, so every block is a map.
    let maps = all_maps(n)?;
    let mut block_checks = 0usize;
    let mut block_failure = Value::Null;
    for r2 in maps.iter().filter(|r| r.is_surjective()) {
        let fiber = r2.inverse().map(|k| k.degree()).unwrap_or(0);
        for r1 in &maps {
            let b = block(r1, r2)?;
            block_checks += 1;
            let ok = b.is_map() && b.degree() <= fiber && b.compose(r2)? == *r1;
            if !ok && block_failure.is_null() {
                block_failure = json!({"r1": r1, "r2": r2, "block": b});
            }
        }
    }
    let non_surjective_rejected = maps
        .iter()
        .filter(|r| !r.is_surjective())
        .all(|r2| matches!(block(&maps[0], r2), Err(Error::NotSurjective)));
    let pass = counter.is_none() && block_failure.is_null() && non_surjective_rejected;
    let mut details = obj(json!({
        "maps_corr_pairs": pairs,
        "maps_corr_holds": counter.is_none(),
        "blocks_checked": block_checks,
        "non_surjective_rejected": non_surjective_rejected,
    }));
    if let Some((k1, k2)) = counter {
        details.insert("counterexample".into(), json!({"k1": k1, "k2": k2}));
    }
    if !block_failure.is_null() {
        details.insert("block_counterexample".into(), block_failure);
    }
    Ok((pass, details))
}

/// Non-constant maps `g1`, `g2` with `g2∘g1` constant: the ideal of
/// constants is not prime.
pub fn non_prime_example(n: usize) -> Result<Option<(FiniteCorr, FiniteCorr)>> {
    let maps = all_maps(n)?;
    let nonconst: Vec<&FiniteCorr> = maps.iter().filter(|g| !g.is_constant()).collect();
    for g1 in &nonconst {
        for g2 in &nonconst {
            if g2.compose(g1)?.is_constant() {
                return Ok(Some(((*g1).clone(), (*g2).clone())));
            }
        }
    }
    Ok(None)
}

fn ideal(n: usize) -> Result<(bool, Map<String, Value>)> {
    if n > 3 {
        return Err(Error::BudgetExceeded(format!("ideal suite on {n} points (limit 3)")));
    }
    let all = all_correspondences(n)?;
    let ideal = minimal_ideal(n)?;
    let mut failure = Value::Null;
    'outer: for c in &ideal {
        for k in &all {
            let left = k.compose(c)?;
            let right = c.compose(k)?;
            if !left.is_constant() || right != *c {
                failure = json!({"constant": c, "k": k});
                break 'outer;
            }
        }
    }
    let size_ok = ideal.len() == (1usize << n) - 1;
    let example = non_prime_example(n)?;
    // Two-point sets have only bijections as non-constant maps.
    let example_ok = example.is_some() == (n >= 3);
    let pass = failure.is_null() && size_ok && example_ok;
    let mut details = obj(json!({
        "ideal_size": ideal.len(),
        "axioms_hold": failure.is_null(),
        "non_prime_example_found": example.is_some(),
    }));
    if let Some((g1, g2)) = example {
        details.insert("non_prime_example".into(), json!({"g1": g1, "g2": g2}));
    }
    if !failure.is_null() {
        details.insert("counterexample".into(), failure);
    }
    Ok((pass, details))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aut_report_shape() {
        let r = verify_suite(2, Suite::Aut).unwrap();
        let v = r.to_json();
        assert_eq!(v["automorphisms"], 2);
        assert_eq!(v["expected"], 2);
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn every_suite_passes_on_two_and_three_points() {
        for n in [2, 3] {
            for s in Suite::ALL {
                let r = verify_suite(n, s).unwrap();
                assert!(r.pass, "{} n={n}: {}", s.name(), r.to_json());
            }
        }
    }

    #[test]
    fn non_prime_example_on_three_points() {
        let (g1, g2) = non_prime_example(3).unwrap().unwrap();
        assert!(!g1.is_constant() && !g2.is_constant());
        assert!(g2.compose(&g1).unwrap().is_constant());
        assert_eq!(non_prime_example(2).unwrap(), None);
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
