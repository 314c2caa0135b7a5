//! Named, independently runnable identity checks and the report they feed.
//!
//! Every check evaluates both sides of an identity with exact arithmetic
//! (modulo `t^{N+1}` where series are involved) and passes iff they are
//! structurally equal after canonicalization.

mod checks;

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraMode, BracketTable, StandardBracket};
use crate::error::{AlgebraError, Result};
use crate::quantization::QParams;
use crate::scalar::{int, rat, to_pq, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one check. A failing result always carries a counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    #[serde(rename = "paper_ref")]
    pub reference: String,
    pub status: Status,
    pub elapsed_ms: u64,
    pub details: String,
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Samples {
    pub shifts: Vec<String>,
    pub betas: Vec<String>,
    pub gammas: Vec<String>,
    pub indices: Vec<String>,
    pub random_triples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportConfig {
    pub alpha: String,
    pub order: usize,
    pub mode: AlgebraMode,
    pub seed: u64,
    pub samples: Samples,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub config: ReportConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

type CheckFn = fn(&checks::Ctx) -> checks::Outcome;

struct Entry {
    id: &'static str,
    reference: &'static str,
    run: CheckFn,
}

const REGISTRY: &[Entry] = &[
    Entry {
        id: "jacobi",
        reference: "[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0 and [g,h] = -[h,g] for the bracket relations",
        run: checks::jacobi,
    },
    Entry {
        id: "factorials",
        reference: "x^(s+t)_a = x^(s)_a x^(t)_(a+s); x^[s+t]_a = x^[s]_a x^[t]_(a-s); x^[s]_a = x^(s)_(a-s+1); binomial sums with x = h",
        run: checks::factorials,
    },
    Entry {
        id: "ad_expansion",
        reference: "x y^m = Σ_k (-1)^k C(m,k) y^(m-k) (ad y)^k(x)",
        run: checks::ad_expansion,
    },
    Entry {
        id: "commutation",
        reference: "L(β) h^(i)_a = h^(i)_(a-β/α) L(β); I(α) h^(i)_a = h^(i)_(a-1) I(α); e^n h^(i)_a = h^(i)_(a-n) e^n (rising and falling)",
        run: checks::commutation,
    },
    Entry {
        id: "twist_product",
        reference: "𝓕_a F_b = 1⊗(1-et)^(a-b); v_a u_b = (1-et)^(-(a+b))",
        run: checks::twist_product,
    },
    Entry {
        id: "inverses",
        reference: "F_a^-1 = 𝓕_a; u_a^-1 = v_(-a); m(Id⊗S₀)(𝓕) = v; m(S₀⊗Id)(𝓕^-1) = u",
        run: checks::inverses,
    },
    Entry {
        id: "falling_coproduct",
        reference: "Δ₀(h^[r]) = Σ_i C(r,i) h^[i]_(-a) ⊗ h^[r-i]_a",
        run: checks::falling_coproduct,
    },
    Entry {
        id: "twist_axioms",
        reference: "(𝓕⊗1)(Δ₀⊗Id)(𝓕) = (1⊗𝓕)(Id⊗Δ₀)(𝓕); (ε⊗Id)(𝓕) = 1 = (Id⊗ε)(𝓕)",
        run: checks::twist_axioms,
    },
    Entry {
        id: "F_left_leg",
        reference: "(L(β)⊗1) F_a = F_(a-β/α) (L(β)⊗1); (I(α)⊗1) F_a = F_(a-1) (I(α)⊗1)",
        run: checks::f_left_leg,
    },
    Entry {
        id: "e_commutation",
        reference: "L(β) e^r = e^r L(β) + α r e^(r-1) I(α+β); I(α) e^r = e^r I(α)",
        run: checks::e_commutation,
    },
    Entry {
        id: "F_right_leg",
        reference: "(1⊗L(β)) F_a = F_a (1⊗L(β)) + α F_(a+1) (h^(1)_a ⊗ I(α+β) t); (1⊗I(α)) F_a = F_a (1⊗I(α))",
        run: checks::f_right_leg,
    },
    Entry {
        id: "u_commutation",
        reference: "L(β) u_a = u_(a+β/α) L(β) - α u_(a+β/α) h^[1]_(-a-β/α) I(α+β) t; I(α) u_a = u_(a+1) I(α)",
        run: checks::u_commutation,
    },
    Entry {
        id: "cybe",
        reference: "[r12,r13] + [r12,r23] + [r13,r23] = 0 for r = h⊗e - e⊗h",
        run: checks::cybe,
    },
    Entry {
        id: "cobracket",
        reference: "Δ_r(x) = [x,h]⊗e - e⊗[x,h] + h⊗[x,e] - [x,e]⊗h is skew and a 1-cocycle",
        run: checks::cobracket,
    },
    Entry {
        id: "theorem_closed_forms",
        reference: "𝓕 Δ₀(g) F and v S₀(g) u equal the closed forms of Δ(L(β)), Δ(I(γ)), S(L(β)), S(I(γ))",
        run: checks::theorem_closed_forms,
    },
    Entry {
        id: "hopf_axioms",
        reference: "(Δ⊗Id)Δ = (Id⊗Δ)Δ; (ε⊗Id)Δ = Id = (Id⊗ε)Δ; m(S⊗Id)Δ = ιε = m(Id⊗S)Δ",
        run: checks::hopf_axioms,
    },
    Entry {
        id: "classical_limit",
        reference: "Δ ≡ Δ₀ and S ≡ S₀ modulo t",
        run: checks::classical_limit,
    },
    Entry {
        id: "grading",
        reference: "the t^r coefficient of Δ(g) and S(g) is homogeneous of degree deg(g) + rα",
        run: checks::grading,
    },
];

/// Registered check ids, in registry order.
pub fn check_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.id).collect()
}

/// Sample grids shared by the checks.
#[derive(Clone, Debug)]
pub struct SampleGrid {
    /// Shift parameters `a, b`.
    pub shifts: Vec<Scalar>,
    /// Indices `β` of `L(β)`.
    pub betas: Vec<Scalar>,
    /// Indices `γ ≠ 0` of `I(γ)`.
    pub gammas: Vec<Scalar>,
    /// Index set for the random bracket triples.
    pub indices: Vec<Scalar>,
    pub random_triples: usize,
}

fn dedup(mut v: Vec<Scalar>) -> Vec<Scalar> {
    let mut seen = Vec::new();
    v.retain(|x| {
        if seen.contains(x) {
            false
        } else {
            seen.push(x.clone());
            true
        }
    });
    v
}

impl SampleGrid {
    pub fn for_alpha(alpha: &Scalar) -> Self {
        let betas = dedup(vec![
            int(-2),
            int(-1),
            -alpha.clone(),
            int(0),
            rat(1, 2),
            int(1),
            rat(3, 2),
            int(2),
        ]);
        let gammas = dedup(vec![alpha.clone(), int(-1), alpha * int(2), rat(1, 2), int(2)])
            .into_iter()
            .filter(|g| *g != int(0))
            .collect();
        let mut indices: Vec<Scalar> = (-3..=3).map(int).collect();
        indices.push(rat(1, 2));
        indices.push(rat(-1, 2));
        SampleGrid {
            shifts: vec![int(0), int(1), int(-1), rat(1, 2)],
            betas,
            gammas,
            indices,
            random_triples: 200,
        }
    }

    fn describe(&self) -> Samples {
        let s = |v: &[Scalar]| v.iter().map(to_pq).collect();
        Samples {
            shifts: s(&self.shifts),
            betas: s(&self.betas),
            gammas: s(&self.gammas),
            indices: s(&self.indices),
            random_triples: self.random_triples,
        }
    }
}

/// Runs checks for fixed parameters and seed. Cloning is cheap; every check
/// builds its own algebra, so checks share no mutable state.
#[derive(Clone)]
pub struct Verifier {
    params: QParams,
    seed: u64,
    grid: SampleGrid,
    table: Arc<dyn BracketTable>,
}

impl std::fmt::Debug for Verifier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Verifier")
            .field("params", &self.params)
            .field("seed", &self.seed)
            .field("grid", &self.grid)
            .finish_non_exhaustive()
    }
}

impl Verifier {
    pub fn new(params: QParams, seed: u64) -> Self {
        let grid = SampleGrid::for_alpha(&params.alpha);
        Verifier {
            params,
            seed,
            grid,
            table: Arc::new(StandardBracket),
        }
    }

    /// Replaces the `β` grid.
    pub fn with_betas(mut self, betas: Vec<Scalar>) -> Self {
        self.grid.betas = dedup(betas);
        self
    }

    pub fn with_grid(mut self, grid: SampleGrid) -> Self {
        self.grid = grid;
        self
    }

    /// Swaps in a different bracket table.
    pub fn with_table(mut self, table: Arc<dyn BracketTable>) -> Self {
        self.table = table;
        self
    }

    pub fn params(&self) -> &QParams {
        &self.params
    }

    pub fn grid(&self) -> &SampleGrid {
        &self.grid
    }

    pub fn check(&self, id: &str) -> Result<CheckResult> {
        let entry = REGISTRY
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| AlgebraError::UnknownCheck(id.to_string()))?;
        Ok(self.run_entry(entry))
    }

    fn run_entry(&self, entry: &Entry) -> CheckResult {
        let start = Instant::now();
        let outcome = checks::Ctx::new(self).map(|ctx| (entry.run)(&ctx));
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let (status, details, counterexample) = match outcome {
            Ok(Ok(details)) => (Status::Pass, details, None),
            Ok(Err(f)) => (
                Status::Fail,
                f.details,
                Some(Counterexample {
                    lhs: f.lhs,
                    rhs: f.rhs,
                }),
            ),
            Err(e) => (
                Status::Fail,
                format!("could not set up check: {e}"),
                Some(Counterexample {
                    lhs: "<error>".into(),
                    rhs: e.to_string(),
                }),
            ),
        };
        CheckResult {
            id: entry.id.to_string(),
            reference: entry.reference.to_string(),
            status,
            elapsed_ms,
            details,
            counterexample,
        }
    }

    /// Runs the given checks concurrently; results come back in the order
    /// requested.
    pub fn run(&self, ids: &[&str]) -> Result<Report> {
        let entries: Vec<&Entry> = ids
            .iter()
            .map(|id| {
                REGISTRY
                    .iter()
                    .find(|e| e.id == *id)
                    .ok_or_else(|| AlgebraError::UnknownCheck(id.to_string()))
            })
            .collect::<Result<_>>()?;
        let checks: Vec<CheckResult> = entries.par_iter().map(|e| self.run_entry(e)).collect();
        Ok(self.report(checks))
    }

    pub fn run_all(&self) -> Report {
        let checks: Vec<CheckResult> = REGISTRY.par_iter().map(|e| self.run_entry(e)).collect();
        self.report(checks)
    }

    fn report(&self, checks: Vec<CheckResult>) -> Report {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let total = checks.len();
        Report {
            config: ReportConfig {
                alpha: to_pq(&self.params.alpha),
                order: self.params.order,
                mode: self.params.mode,
                seed: self.seed,
                samples: self.grid.describe(),
            },
            checks,
            summary: Summary {
                passed,
                failed: total - passed,
                total,
            },
        }
    }
}

/// Single check with default grids.
pub fn check(id: &str, params: &QParams, seed: u64) -> Result<CheckResult> {
    Verifier::new(params.clone(), seed).check(id)
}

/// Every registered check with default grids.
pub fn run_all(params: &QParams, seed: u64) -> Report {
    Verifier::new(params.clone(), seed).run_all()
}
