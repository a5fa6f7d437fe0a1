//! Signed, weighted generating functions by enumeration and exact identity
//! checks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::formula::{closed_form_detailed, FormulaError, QFormula};
use crate::perm::{visit, visit_with_first, Constraint, Family, Stat};
use crate::poly::LaurentPoly;
use crate::sign::{sweep_contracts, ContractSweep, InvolutionCase};

pub use crate::formula::IdentityId;

/// Longest permutations the main identity suite enumerates.
pub const MAX_LENGTH: usize = 19;
/// Longest permutations enumerated from the non-involution families.
pub const MAX_LENGTH_ALL_PERMS: usize = 9;
/// Largest scale for the involution contract sweeps (`|B(9, 9)| = 48620`).
pub const MAX_CONTRACT_N: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("{what} needs length {length}, above the bound {bound} (pass --override-bounds to run anyway)")]
    BoundExceeded { what: String, length: usize, bound: usize },
}

/// `sum over family(n) [filter] of (-1)^(sign) q^(scale * weight)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenFunSpec {
    pub family: Family,
    pub n: usize,
    pub sign: Option<Stat>,
    pub weight: Option<Stat>,
    pub scale: i64,
    pub filter: Option<Constraint>,
}

impl GenFunSpec {
    pub fn new(family: Family, n: usize) -> Self {
        GenFunSpec {
            family,
            n,
            sign: None,
            weight: None,
            scale: 1,
            filter: None,
        }
    }

    pub fn weighted(family: Family, n: usize, weight: Stat) -> Self {
        GenFunSpec {
            weight: Some(weight),
            ..GenFunSpec::new(family, n)
        }
    }

    pub fn signed(self, sign: Stat) -> Self {
        GenFunSpec {
            sign: Some(sign),
            ..self
        }
    }

    pub fn scaled(self, scale: i64) -> Self {
        GenFunSpec { scale, ..self }
    }

    pub fn filtered(self, filter: Constraint) -> Self {
        GenFunSpec {
            filter: Some(filter),
            ..self
        }
    }
}

#[derive(Default)]
struct Tally {
    coeffs: BTreeMap<i64, i64>,
    count: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (e, c) in other.coeffs {
            *self.coeffs.entry(e).or_insert(0) += c;
        }
        self.count += other.count;
        self
    }
}

pub fn genfun(spec: &GenFunSpec, exec: Exec) -> LaurentPoly {
    genfun_counted(spec, exec).0
}

/// [`genfun`] together with the number of permutations summed.
pub fn genfun_counted(spec: &GenFunSpec, exec: Exec) -> (LaurentPoly, u64) {
    let spec = *spec;
    let record = move |tally: &mut Tally, e: &[usize]| {
        if spec.filter.is_some_and(|c| !c.accepts(e)) {
            return;
        }
        let sign = match spec.sign {
            Some(s) if s.value(e) % 2 != 0 => -1,
            _ => 1,
        };
        let exponent = spec.weight.map_or(0, |w| spec.scale * w.value(e));
        *tally.coeffs.entry(exponent).or_insert(0) += sign;
        tally.count += 1;
    };
    let tally = if spec.n == 0 {
        let mut t = Tally::default();
        visit(spec.family, 0, |e| record(&mut t, e));
        t
    } else {
        let firsts: Vec<usize> = match spec.filter {
            Some(Constraint {
                stat: Stat::Lead,
                value,
            }) => (1..=spec.n).filter(|&f| f as i64 == value).collect(),
            _ => (1..=spec.n).collect(),
        };
        exec.map_reduce(
            firsts,
            Tally::default,
            |first| {
                let mut t = Tally::default();
                visit_with_first(spec.family, spec.n, first, |e| record(&mut t, e));
                t
            },
            Tally::merge,
        )
    };
    (LaurentPoly::from_terms(tally.coeffs), tally.count)
}

/// Left-hand side of an identity as a generating-function spec.
pub fn lhs_spec(f: &QFormula) -> GenFunSpec {
    use IdentityId::*;
    let len = f.perm_length();
    let family = f.id.family();
    let param = f.param.unwrap_or(0);
    let filter = |stat, value| Constraint { stat, value };
    match f.id {
        JdDes => GenFunSpec::weighted(family, len, Stat::Maj).filtered(filter(Stat::Des, param)),
        JdLead => GenFunSpec::weighted(family, len, Stat::Maj).filtered(filter(Stat::Lead, param)),
        Cor123 => GenFunSpec::weighted(family, len, Stat::Maj).filtered(filter(Stat::Des, len as i64 - 1 - param)),
        LeadI | LeadII | LeadIII | LeadIV => GenFunSpec::weighted(family, len, Stat::Lead).signed(Stat::Maj),
        Des321I | Des321II | Des321III | Des123I | Des123II | Des123III => {
            GenFunSpec::weighted(family, len, Stat::Des).signed(Stat::Maj)
        }
        ArOdd | ArEven => GenFunSpec::weighted(family, len, Stat::Ldes).signed(Stat::Inv),
        Ss => GenFunSpec::new(family, len).signed(Stat::Inv),
    }
}

/// Outcome of one identity check. Both sides are carried in full.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub n: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, i64>,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub lhs_text: String,
    pub rhs_text: String,
    pub equal: bool,
    pub elapsed_ms: u64,
    pub counts: BTreeMap<String, u64>,
}

impl VerificationReport {
    fn new(
        id: String,
        n: usize,
        params: BTreeMap<String, i64>,
        lhs: LaurentPoly,
        rhs: LaurentPoly,
        started: Instant,
        counts: BTreeMap<String, u64>,
    ) -> Self {
        VerificationReport {
            id,
            n,
            params,
            lhs_text: lhs.to_string(),
            rhs_text: rhs.to_string(),
            equal: lhs == rhs,
            lhs,
            rhs,
            elapsed_ms: started.elapsed().as_millis() as u64,
            counts,
        }
    }
}

/// Bound a check must respect unless explicitly overridden.
pub fn length_bound(family: Family) -> usize {
    if family.involutions_only() {
        MAX_LENGTH
    } else {
        MAX_LENGTH_ALL_PERMS
    }
}

fn check_bound(f: &QFormula) -> Result<(), VerifyError> {
    let bound = length_bound(f.id.family());
    if f.perm_length() > bound {
        return Err(VerifyError::BoundExceeded {
            what: f.to_string(),
            length: f.perm_length(),
            bound,
        });
    }
    Ok(())
}

/// Options shared by [`check`] and [`verify_all`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    pub exec: Exec,
    pub override_bounds: bool,
}

/// Checks one identity: the left side by enumeration, the right side from
/// [`crate::formula::closed_form`].
pub fn check(
    id: IdentityId,
    n: usize,
    param: Option<i64>,
    opts: CheckOptions,
) -> Result<VerificationReport, VerifyError> {
    let f = QFormula::new(id, n, param)?;
    if !opts.override_bounds {
        check_bound(&f)?;
    }
    Ok(check_formula(&f, opts.exec))
}

fn check_formula(f: &QFormula, exec: Exec) -> VerificationReport {
    let started = Instant::now();
    let spec = lhs_spec(f);
    let (lhs, count) = genfun_counted(&spec, exec);
    let rhs = closed_form_detailed(f, exec);
    let mut counts = rhs.enumerated;
    counts.insert(format!("{}_{}", spec.family.name(), spec.n), count);
    let params = match (f.id.param_name(), f.param) {
        (Some(name), Some(v)) => BTreeMap::from([(name.to_string(), v)]),
        _ => BTreeMap::new(),
    };
    VerificationReport::new(f.id.name().to_string(), f.n, params, lhs, rhs.poly, started, counts)
}

/// Every `(identity, n, parameter)` in the default ranges whose left-hand
/// permutations have length at most `n_max` (and within the bounds).
pub fn plan(n_max: Option<usize>) -> Vec<QFormula> {
    use IdentityId::*;
    let mut out = Vec::new();
    for id in IdentityId::ALL {
        let cap = n_max.unwrap_or(usize::MAX).min(length_bound(id.family()));
        let max_n = match id {
            JdDes | JdLead => 16,
            Cor123 => 18,
            LeadI | LeadII | LeadIII | LeadIV | Des321I | Des321II | Des123I | Des123II => 4,
            Des321III | Des123III => 8,
            ArOdd | ArEven => 4,
            Ss => 9,
        };
        for n in id.min_n()..=max_n {
            if id.perm_length(n) > cap {
                continue;
            }
            let params: Vec<Option<i64>> = match id {
                JdDes | Cor123 => (0..=(n / 2) as i64).map(Some).collect(),
                JdLead => (1..=(n / 2 + 1) as i64).map(Some).collect(),
                _ => vec![None],
            };
            for param in params {
                out.push(QFormula::new(id, n, param).expect("plan stays in range"));
            }
        }
    }
    out
}

/// Runs [`plan`]; reports come back in plan order whatever the execution mode.
pub fn verify_all(n_max: Option<usize>, exec: Exec) -> Vec<VerificationReport> {
    let inner = if exec.is_parallel() { Exec::Sequential } else { exec };
    exec.map(plan(n_max), |f| check_formula(&f, inner))
}

/// A contract sweep packaged like an identity report: `lhs` is the signed
/// sum over the whole domain, `rhs` the signed sum over the constructed
/// fixed points, each as `sum_i c_i q^(i+1)` over subsets `B_i`.
#[derive(Debug, Clone, Serialize)]
pub struct ContractReport {
    #[serde(flatten)]
    pub report: VerificationReport,
    pub sweep: ContractSweep,
}

pub fn check_involution_contracts(case: InvolutionCase, opts: CheckOptions) -> Result<ContractReport, VerifyError> {
    if case.n > MAX_CONTRACT_N && !opts.override_bounds {
        return Err(VerifyError::BoundExceeded {
            what: case.to_string(),
            length: case.n,
            bound: MAX_CONTRACT_N,
        });
    }
    let started = Instant::now();
    let sweep = sweep_contracts(case, opts.exec);
    let lhs = sweep.signed_generating_function();
    let rhs = sweep.signed_constructed_generating_function();
    let counts = BTreeMap::from([
        ("domain".to_string(), sweep.domain_size),
        ("fixed".to_string(), sweep.fixed_count),
    ]);
    let mut report = VerificationReport::new(
        case.which.name().to_string(),
        case.n,
        BTreeMap::new(),
        lhs,
        rhs,
        started,
        counts,
    );
    report.equal = report.equal && sweep.all_hold();
    Ok(ContractReport { report, sweep })
}
