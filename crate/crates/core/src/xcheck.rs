//! Differential checks of every construction against the lasso oracle.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alternating::{a1w_to_ltl, ltl_to_a1w_with, InitialMode};
use crate::corpus::CorpusSpec;
use crate::det::ltl_to_drw_over;
use crate::ltl::{delta_level, proper_subformulas, Formula};
use crate::normalize::{normalize_with, Simplifier, Variant};
use crate::word::{enumerate_lassos, Alphabet, CompiledFormula, LassoWord};
use crate::Result;

#[derive(Debug, Clone)]
pub struct XcheckOptions {
    pub max_prefix: usize,
    pub max_cycle: usize,
    /// Random lassos added to the exhaustive ones.
    pub random_lassos: usize,
    /// Prefix and cycle bound of the random lassos.
    pub random_max: usize,
    /// Also build the deterministic Rabin automaton.
    pub drw: bool,
    /// Simplifier used by normalization.
    pub simplifier: Simplifier,
    /// Worker threads; 0 picks the available parallelism.
    pub threads: usize,
}

impl Default for XcheckOptions {
    fn default() -> Self {
        Self {
            max_prefix: 2,
            max_cycle: 3,
            random_lassos: 0,
            random_max: 5,
            drw: true,
            simplifier: Simplifier::default(),
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// The primary normal form agrees with the input on every lasso.
    Normalization,
    /// Same for the dual normal form.
    DualNormalization,
    /// Both normal forms are in Δ₂.
    DeltaTwo,
    /// `|nf| ≤ 2^(2|φ|+2)` for inputs longer than 5.
    SizeBound,
    /// At most two states per proper subformula.
    A1wStates,
    /// The automaton of the normal form has height at most 2.
    A1wHeight,
    /// Back-translation of the automaton agrees with the input.
    A1wRoundtrip,
    /// The Rabin automaton agrees with the input.
    DrwMembership,
    /// At most `2^(|µ|+|ν|)` Rabin pairs.
    DrwPairs,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("plain enum");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaReport {
    pub formula: Formula,
    pub checks: Vec<CheckOutcome>,
}

impl FormulaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct XcheckReport {
    pub seed: u64,
    pub count: usize,
    pub max_props: usize,
    pub max_size: usize,
    pub max_prefix: usize,
    pub max_cycle: usize,
    pub random_lassos: usize,
    pub failures: usize,
    pub formulas: Vec<FormulaReport>,
}

impl XcheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// The lassos a formula is checked on: all lassos within the bounds, then
/// `random` seeded random ones.
pub fn test_lassos(alphabet: &Alphabet, opts: &XcheckOptions, seed: u64) -> Vec<LassoWord> {
    let mut v: Vec<LassoWord> =
        enumerate_lassos(alphabet, opts.max_prefix, opts.max_cycle).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..opts.random_lassos {
        v.push(LassoWord::random(
            alphabet,
            opts.random_max,
            opts.random_max,
            &mut rng,
        ));
    }
    v
}

fn outcome(check: Check, passed: bool) -> CheckOutcome {
    CheckOutcome {
        check,
        passed,
        counterexample: None,
        detail: None,
    }
}

fn failure(check: Check, detail: String) -> CheckOutcome {
    CheckOutcome {
        detail: Some(detail),
        ..outcome(check, false)
    }
}

/// Compare two predicates on the given lassos; the first disagreement is the
/// counterexample.
fn agreement(
    check: Check,
    lassos: &[LassoWord],
    mut left: impl FnMut(&LassoWord) -> bool,
    mut right: impl FnMut(&LassoWord) -> bool,
) -> CheckOutcome {
    match lassos.iter().find(|w| left(w) != right(w)) {
        None => outcome(check, true),
        Some(w) => CheckOutcome {
            counterexample: Some(w.to_string()),
            ..outcome(check, false)
        },
    }
}

fn equivalent(
    check: Check,
    phi: &CompiledFormula,
    psi: &Formula,
    lassos: &[LassoWord],
) -> CheckOutcome {
    match CompiledFormula::new(psi, phi.alphabet()) {
        Ok(c) => agreement(check, lassos, |w| phi.holds(w), |w| c.holds(w)),
        Err(e) => failure(check, e.to_string()),
    }
}

/// Run the whole battery on one formula.
pub fn check_formula(
    phi: &Formula,
    alphabet: &Alphabet,
    opts: &XcheckOptions,
    seed: u64,
) -> Result<FormulaReport> {
    let lassos = test_lassos(alphabet, opts, seed);
    let oracle = CompiledFormula::new(phi, alphabet)?;
    let mut checks = Vec::new();

    let primary = normalize_with(phi, Variant::Primary, &opts.simplifier);
    let dual = normalize_with(phi, Variant::Dual, &opts.simplifier);
    checks.push(equivalent(
        Check::Normalization,
        &oracle,
        &primary.result,
        &lassos,
    ));
    checks.push(equivalent(
        Check::DualNormalization,
        &oracle,
        &dual.result,
        &lassos,
    ));
    let levels = (delta_level(&primary.result), delta_level(&dual.result));
    checks.push(if levels.0 <= 2 && levels.1 <= 2 {
        outcome(Check::DeltaTwo, true)
    } else {
        failure(
            Check::DeltaTwo,
            format!("Delta levels {} and {}", levels.0, levels.1),
        )
    });
    let n = phi.len();
    if n > 5 {
        let bound = 2f64.powi(2 * n as i32 + 2);
        let worst = primary.result_length.max(dual.result_length);
        checks.push(if (worst as f64) <= bound {
            outcome(Check::SizeBound, true)
        } else {
            failure(
                Check::SizeBound,
                format!("length {worst} for input length {n}"),
            )
        });
    }

    match ltl_to_a1w_with(phi, alphabet, InitialMode::Bracket) {
        Ok(a) => {
            let limit = 2 * proper_subformulas(phi).len();
            checks.push(if a.num_states() <= limit {
                outcome(Check::A1wStates, true)
            } else {
                failure(
                    Check::A1wStates,
                    format!("{} states, bound {limit}", a.num_states()),
                )
            });
            checks.push(match a1w_to_ltl(&a) {
                Ok(back) => equivalent(Check::A1wRoundtrip, &oracle, &back, &lassos),
                Err(e) => failure(Check::A1wRoundtrip, e.to_string()),
            });
        }
        Err(e) => checks.push(failure(Check::A1wStates, e.to_string())),
    }
    checks.push(
        match ltl_to_a1w_with(&primary.result, alphabet, InitialMode::Bracket)
            .and_then(|a| a.height())
        {
            Ok(h) if h <= 2 => outcome(Check::A1wHeight, true),
            Ok(h) => failure(Check::A1wHeight, format!("height {h}")),
            Err(e) => failure(Check::A1wHeight, e.to_string()),
        },
    );

    if opts.drw {
        match ltl_to_drw_over(phi, alphabet) {
            Ok(r) => {
                let d = &r.automaton;
                checks.push(agreement(
                    Check::DrwMembership,
                    &lassos,
                    |w| oracle.holds(w),
                    |w| d.accepts(w).unwrap_or(false),
                ));
                checks.push(if r.pairs as u64 <= r.pair_bound {
                    outcome(Check::DrwPairs, true)
                } else {
                    failure(
                        Check::DrwPairs,
                        format!("{} pairs, bound {}", r.pairs, r.pair_bound),
                    )
                });
            }
            Err(e) => checks.push(failure(Check::DrwMembership, e.to_string())),
        }
    }
    Ok(FormulaReport {
        formula: phi.clone(),
        checks,
    })
}

/// Generate the corpus and check every formula. Results are in corpus order
/// whatever the number of threads.
pub fn xcheck(spec: &CorpusSpec, opts: &XcheckOptions) -> Result<XcheckReport> {
    let alphabet = spec.alphabet()?;
    let formulas = spec.generate();
    let threads = match opts.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        t => t,
    }
    .min(formulas.len().max(1));
    let chunk = formulas.len().div_ceil(threads).max(1);
    let seed_of = |i: usize| {
        spec.seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(i as u64)
    };
    let results: Vec<Result<FormulaReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = formulas
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                let alphabet = &alphabet;
                s.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(j, f)| check_formula(f, alphabet, opts, seed_of(c * chunk + j)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let formulas = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(XcheckReport {
        seed: spec.seed,
        count: spec.count,
        max_props: spec.max_props,
        max_size: spec.max_size,
        max_prefix: opts.max_prefix,
        max_cycle: opts.max_cycle,
        random_lassos: opts.random_lassos,
        failures: formulas.iter().filter(|f| !f.passed()).count(),
        formulas,
    })
}
