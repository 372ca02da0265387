//! The eval/flatten lemmas checked pointwise on lassos.

use std::collections::HashMap;

use delta2::ltl::{mu_set, nu_set};
use delta2::normalize::{eval_mu, eval_nu, phi_conjunct, FormulaSet};
use delta2::word::{Alphabet, CompiledFormula, LassoWord};
use delta2::Formula;

struct Cache {
    alphabet: Alphabet,
    compiled: HashMap<Formula, CompiledFormula>,
}

impl Cache {
    fn holds(&mut self, f: &Formula, w: &LassoWord) -> bool {
        let ab = &self.alphabet;
        self.compiled
            .entry(f.clone())
            .or_insert_with(|| CompiledFormula::new(f, ab).unwrap())
            .holds(w)
    }
}

#[derive(Debug, Default)]
pub struct LemmaStats {
    /// Number of (formula, lasso, M/N) instances whose premises held.
    pub instances: usize,
    pub violations: Vec<String>,
}

impl LemmaStats {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.violations.len() < 20 {
            self.violations.push(what());
        }
    }
}

struct Sets {
    gf: FormulaSet,
    fg: FormulaSet,
    f: FormulaSet,
    g: FormulaSet,
}

fn sets(c: &CompiledFormula, phi: &Formula, w: &LassoWord) -> Sets {
    let t = c.table(w);
    let mu = mu_set(phi);
    let nu = nu_set(phi);
    Sets {
        gf: mu
            .iter()
            .filter(|p| t.infinitely_often(p))
            .cloned()
            .collect(),
        f: mu.iter().filter(|p| t.eventually(p)).cloned().collect(),
        fg: nu.iter().filter(|p| t.almost_always(p)).cloned().collect(),
        g: nu.iter().filter(|p| t.always(p)).cloned().collect(),
    }
}

fn gf_of(x: &Formula, w: &LassoWord, ab: &Alphabet) -> FormulaSet {
    let c = CompiledFormula::new(x, ab).unwrap();
    let t = c.table(w);
    mu_set(x)
        .into_iter()
        .filter(|p| t.infinitely_often(p))
        .collect()
}

/// Check every lemma for `phi` on `words`, with `ms` and `ns` the sampled
/// subsets of `mu(phi)` and `nu(phi)`. The sets computed from each word are
/// added to the samples.
pub fn check(
    phi: &Formula,
    words: &[LassoWord],
    ms: &[FormulaSet],
    ns: &[FormulaSet],
    stats: &mut LemmaStats,
) {
    let ab = words[0].alphabet().clone();
    let base = CompiledFormula::new(phi, &ab).unwrap();
    let mut cache = Cache {
        alphabet: ab.clone(),
        compiled: HashMap::new(),
    };
    let mut releases: Vec<(Formula, Formula, bool)> = Vec::new();
    for sub in phi.subformulas() {
        match sub {
            Formula::WeakUntil(l, r) => {
                releases.push((l.as_ref().clone(), r.as_ref().clone(), true))
            }
            Formula::Release(l, r) => {
                releases.push((l.as_ref().clone(), r.as_ref().clone(), false))
            }
            _ => {}
        }
    }
    releases.sort();
    releases.dedup();
    for w in words {
        let s = sets(&base, phi, w);
        let holds = base.holds(w);
        let mut m_cands: Vec<FormulaSet> = ms.to_vec();
        m_cands.extend([s.gf.clone(), s.f.clone()]);
        let mut n_cands: Vec<FormulaSet> = ns.to_vec();
        n_cands.extend([s.fg.clone(), s.g.clone()]);
        m_cands.sort();
        m_cands.dedup();
        n_cands.sort();
        n_cands.dedup();

        let mut nu_val = HashMap::new();
        for m in &m_cands {
            let v = cache.holds(&eval_nu(phi, m), w);
            nu_val.insert(m.clone(), v);
            if s.f.is_subset(m) && holds {
                stats.check(v, || format!("5.2(1) {phi} M={m:?} on {w}"));
            }
            if m.is_subset(&s.gf) && v {
                stats.check(holds, || format!("5.2(2) {phi} M={m:?} on {w}"));
            }
        }
        let mut mu_val = HashMap::new();
        for n in &n_cands {
            let v = cache.holds(&eval_mu(phi, n), w);
            mu_val.insert(n.clone(), v);
            if s.fg.is_subset(n) && holds {
                stats.check(v, || format!("5.4(1) {phi} N={n:?} on {w}"));
            }
            if n.is_subset(&s.g) && v {
                stats.check(holds, || format!("5.4(2) {phi} N={n:?} on {w}"));
            }
        }

        let own = cache.holds(&phi_conjunct(&s.gf, &s.fg), w);
        stats.check(own, || format!("5.5(1) {phi} on {w}"));
        for m in &m_cands {
            for n in &n_cands {
                if cache.holds(&phi_conjunct(m, n), w) {
                    stats.check(m.is_subset(&s.gf) && n.is_subset(&s.fg), || {
                        format!("5.5(2) {phi} M={m:?} N={n:?} on {w}")
                    });
                }
            }
        }

        for (small, v) in &nu_val {
            for (large, v2) in &nu_val {
                if small.is_subset(large) && *v {
                    stats.check(*v2, || {
                        format!("6.3 eval_nu {phi} {small:?} <= {large:?} on {w}")
                    });
                }
            }
        }
        for (small, v) in &mu_val {
            for (large, v2) in &mu_val {
                if small.is_subset(large) && *v {
                    stats.check(*v2, || {
                        format!("6.3 eval_mu {phi} {small:?} <= {large:?} on {w}")
                    });
                }
            }
        }

        let g = Formula::globally(phi.clone());
        let g_rhs = Formula::until(phi.clone(), Formula::globally(eval_nu(phi, &s.gf)));
        let (a, b) = (cache.holds(&g, w), cache.holds(&g_rhs, w));
        stats.check(a == b, || format!("6.4 {phi} on {w}"));

        for (l, r, weak) in &releases {
            let (lhs, rhs) = if *weak {
                let gl = Formula::globally(eval_nu(l, &gf_of(l, w, &ab)));
                (
                    Formula::weak_until(l.clone(), r.clone()),
                    Formula::until(l.clone(), Formula::or(r.clone(), gl)),
                )
            } else {
                let gr = Formula::globally(eval_nu(r, &gf_of(r, w, &ab)));
                (
                    Formula::release(l.clone(), r.clone()),
                    Formula::strong_release(Formula::or(l.clone(), gr), r.clone()),
                )
            };
            let (a, b) = (cache.holds(&lhs, w), cache.holds(&rhs, w));
            stats.check(a == b, || format!("6.5 {lhs} vs {rhs} on {w}"));
        }
    }
}
