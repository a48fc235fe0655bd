//! Randomized cross-checks of every route to the Poincare polynomial and of
//! the bijections, on seeded random posets.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bijections::{
    des_p1p2, lrmax_count, omega, omega_inv, phi, psi, transverse_permutations,
};
use crate::poly::IntPolynomial;
use crate::poset::Poset;
use crate::whitney::{
    poincare_via_foata, poincare_via_lrmax, poincare_via_transverse, poincare_via_width2,
};

/// Relation densities swept by the generator.
pub const DENSITIES: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// Each pair `i < j` becomes a relation `i <_P j` with probability
/// `density`, then the relation is closed. Edges only point upward in label
/// order, so the result is always naturally labeled.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut relations = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(density) {
                relations.push((i, j));
            }
        }
    }
    Poset::from_relations(n, &relations).expect("upward relations are acyclic")
}

#[derive(Clone, Copy, Debug)]
pub struct SelfCheckConfig {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    /// Negative control: perturb one computed coefficient so that every
    /// trial must fail.
    pub corrupt: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub trial: usize,
    pub n: usize,
    pub density: f64,
    pub checks: usize,
    pub failed: Vec<&'static str>,
}

impl TrialResult {
    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }
}

impl fmt::Display for TrialResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trial {} n={} p={:.1} checks={} ",
            self.trial, self.n, self.density, self.checks
        )?;
        if self.passed() {
            f.write_str("PASS")
        } else {
            write!(f, "FAIL {}", self.failed.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelfCheckReport {
    pub trials: Vec<TrialResult>,
}

impl SelfCheckReport {
    pub fn failures(&self) -> usize {
        self.trials.iter().filter(|t| !t.passed()).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

impl fmt::Display for SelfCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.trials {
            writeln!(f, "{t}")?;
        }
        write!(
            f,
            "selfcheck {}: {} trials, {} failed",
            if self.passed() { "PASS" } else { "FAIL" },
            self.trials.len(),
            self.failures()
        )
    }
}

struct Checks {
    run: usize,
    failed: Vec<&'static str>,
}

impl Checks {
    fn check(&mut self, name: &'static str, ok: bool) {
        self.run += 1;
        if !ok {
            self.failed.push(name);
        }
    }
}

fn at_one(p: &IntPolynomial) -> BigInt {
    p.eval(&BigInt::from(1))
}

/// Every applicable invariant for one poset. Exhaustive bijection checks
/// are limited to `n <= 7`.
pub fn check_poset(p: &Poset, corrupt: bool) -> (usize, Vec<&'static str>) {
    let mut c = Checks {
        run: 0,
        failed: Vec::new(),
    };
    let n = p.len();
    let mut transverse = poincare_via_transverse(p);
    if corrupt {
        transverse += &IntPolynomial::monomial(BigInt::from(1), 0);
    }
    let lrmax = poincare_via_lrmax(p);
    let linext = BigInt::from(p.count_linear_extensions());
    c.check("transverse=lrmax", transverse == lrmax);
    c.check("poin(1)=linext", at_one(&transverse) == linext);
    c.check("constant=1", transverse.coeff(0) == BigInt::from(1));
    c.check("nonnegative", transverse.all_nonnegative());
    c.check(
        "duality",
        poincare_via_transverse(&p.opposite()) == transverse,
    );

    if p.width() <= 2 {
        let d = p.chain_cover_width2().expect("width at most two");
        let w2 = poincare_via_width2(p, &d).expect("valid decomposition");
        c.check("width2=transverse", w2 == transverse);
        if n <= 8 {
            let ok = p.linear_extensions().all(|s| {
                let pi = omega(p, &d, &s).expect("width two");
                pi.pairs() == des_p1p2(p, &d, &s).expect("width two")
                    && omega_inv(p, &d, &pi).ok().as_ref() == Some(&s)
            });
            c.check("omega-roundtrip", ok);
        }
    }

    if let Ok(a) = p.chain_lengths() {
        c.check("foata=transverse", poincare_via_foata(&a) == transverse);
    }

    if n <= 7 {
        let perms = transverse_permutations(p);
        c.check(
            "ptp-count",
            BigUint::from(perms.len()) == p.count_linear_extensions(),
        );
        let mut images = Vec::with_capacity(perms.len());
        let mut ok = true;
        for tau in &perms {
            match phi(p, tau) {
                Ok(sigma) => {
                    ok &= psi(p, &sigma).ok().as_ref() == Some(tau)
                        && lrmax_count(p, &sigma).ok() == Some(tau.num_cycles());
                    images.push(sigma);
                }
                Err(_) => ok = false,
            }
        }
        images.sort();
        ok &= images == p.linear_extensions().collect::<Vec<_>>();
        c.check("phi-psi-roundtrip", ok);
    }
    (c.run, c.failed)
}

/// Trial `k` draws its poset from a generator seeded with `seed + k`, so
/// results do not depend on how trials are scheduled.
pub fn run_selfcheck(cfg: &SelfCheckConfig) -> SelfCheckReport {
    let trials = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(trial as u64));
            let n = rng.gen_range(1..=cfg.n_max.max(1));
            let density = DENSITIES[rng.gen_range(0..DENSITIES.len())];
            let p = random_poset(&mut rng, n, density);
            let (checks, failed) = check_poset(&p, cfg.corrupt);
            TrialResult {
                trial,
                n,
                density,
                checks,
                failed,
            }
        })
        .collect();
    SelfCheckReport { trials }
}
