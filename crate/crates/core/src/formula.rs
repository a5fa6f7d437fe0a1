//! The named identities and their right-hand sides.
//!
//! Right-hand sides that are themselves sums over a smaller family (for
//! example `sum over I_2n(321) of q^(2 lead)`) are enumerated through
//! [`crate::verify::genfun`]. Only the joint-distribution formulas have a
//! true closed form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::perm::{Family, Stat};
use crate::poly::LaurentPoly;
use crate::qalg::{catalan, q_binomial};
use crate::verify::{genfun_counted, GenFunSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("unknown identity '{0}'")]
    UnknownIdentity(String),
    #[error("{id} needs n >= {min}, got {n}")]
    SizeTooSmall { id: IdentityId, n: usize, min: usize },
    #[error("{id} needs --{name}")]
    MissingParam { id: IdentityId, name: &'static str },
    #[error("{id} takes no extra parameter")]
    UnexpectedParam { id: IdentityId },
    #[error("{id}: {name} = {value} is out of range (need {name} >= {min})")]
    ParamOutOfRange {
        id: IdentityId,
        name: &'static str,
        value: i64,
        min: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    JdDes,
    JdLead,
    LeadI,
    LeadII,
    LeadIII,
    LeadIV,
    Des321I,
    Des321II,
    Des321III,
    Des123I,
    Des123II,
    Des123III,
    Cor123,
    ArOdd,
    ArEven,
    Ss,
}

impl IdentityId {
    pub const ALL: [IdentityId; 16] = [
        IdentityId::JdDes,
        IdentityId::JdLead,
        IdentityId::LeadI,
        IdentityId::LeadII,
        IdentityId::LeadIII,
        IdentityId::LeadIV,
        IdentityId::Des321I,
        IdentityId::Des321II,
        IdentityId::Des321III,
        IdentityId::Des123I,
        IdentityId::Des123II,
        IdentityId::Des123III,
        IdentityId::Cor123,
        IdentityId::ArOdd,
        IdentityId::ArEven,
        IdentityId::Ss,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::JdDes => "JD-des",
            IdentityId::JdLead => "JD-lead",
            IdentityId::LeadI => "Lead-I",
            IdentityId::LeadII => "Lead-II",
            IdentityId::LeadIII => "Lead-III",
            IdentityId::LeadIV => "Lead-IV",
            IdentityId::Des321I => "Des321-I",
            IdentityId::Des321II => "Des321-II",
            IdentityId::Des321III => "Des321-III",
            IdentityId::Des123I => "Des123-I",
            IdentityId::Des123II => "Des123-II",
            IdentityId::Des123III => "Des123-III",
            IdentityId::Cor123 => "Cor123",
            IdentityId::ArOdd => "AR-odd",
            IdentityId::ArEven => "AR-even",
            IdentityId::Ss => "SS",
        }
    }

    /// Name of the extra parameter (`k` or `ell`), if the identity has one.
    pub fn param_name(self) -> Option<&'static str> {
        match self {
            IdentityId::JdDes | IdentityId::Cor123 => Some("k"),
            IdentityId::JdLead => Some("ell"),
            _ => None,
        }
    }

    fn min_param(self) -> i64 {
        if self == IdentityId::JdLead {
            1
        } else {
            0
        }
    }

    pub fn min_n(self) -> usize {
        if self == IdentityId::JdDes {
            0
        } else {
            1
        }
    }

    /// Family summed on the left-hand side.
    pub fn family(self) -> Family {
        use IdentityId::*;
        match self {
            Des123I | Des123II | Des123III | Cor123 => Family::I123,
            ArOdd | ArEven | Ss => Family::S321,
            _ => Family::I321,
        }
    }

    /// Length of the permutations summed on the left-hand side.
    pub fn perm_length(self, n: usize) -> usize {
        use IdentityId::*;
        match self {
            JdDes | JdLead | Cor123 | Ss => n,
            LeadI | Des321I | Des123I => 4 * n,
            LeadIV => 4 * n + 1,
            LeadII | Des321II | Des123II => 4 * n + 2,
            LeadIII => 4 * n + 3,
            Des321III | Des123III | ArOdd => 2 * n + 1,
            ArEven => 2 * n,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = |t: &str| t.to_ascii_lowercase().replace(['-', '_'], "");
        IdentityId::ALL
            .into_iter()
            .find(|id| key(id.name()) == key(s.trim()))
            .ok_or_else(|| FormulaError::UnknownIdentity(s.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// An identity at a concrete size, with its `k` or `ell` when it has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QFormula {
    pub id: IdentityId,
    pub n: usize,
    pub param: Option<i64>,
}

impl QFormula {
    pub fn new(id: IdentityId, n: usize, param: Option<i64>) -> Result<Self, FormulaError> {
        if n < id.min_n() {
            return Err(FormulaError::SizeTooSmall { id, n, min: id.min_n() });
        }
        match (id.param_name(), param) {
            (Some(name), None) => return Err(FormulaError::MissingParam { id, name }),
            (None, Some(_)) => return Err(FormulaError::UnexpectedParam { id }),
            (Some(name), Some(value)) if value < id.min_param() => {
                return Err(FormulaError::ParamOutOfRange {
                    id,
                    name,
                    value,
                    min: id.min_param(),
                })
            }
            _ => {}
        }
        Ok(QFormula { id, n, param })
    }

    pub fn perm_length(&self) -> usize {
        self.id.perm_length(self.n)
    }
}

impl fmt::Display for QFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}", self.id, self.n)?;
        if let (Some(name), Some(v)) = (self.id.param_name(), self.param) {
            write!(f, ", {name}={v}")?;
        }
        f.write_str(")")
    }
}

/// A right-hand side together with the sizes of any families enumerated
/// to build it, keyed like `I321_8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub poly: LaurentPoly,
    pub enumerated: BTreeMap<String, u64>,
}

/// `q^(k^2) [ceil(n/2), k]_q [floor(n/2), k]_q`.
fn joint_des(n: i64, k: i64) -> LaurentPoly {
    (&q_binomial((n + 1) / 2, k) * &q_binomial(n / 2, k)).shift(k * k)
}

/// Right-hand side of `f` as a Laurent polynomial.
pub fn closed_form(f: &QFormula, exec: Exec) -> LaurentPoly {
    closed_form_detailed(f, exec).poly
}

pub fn closed_form_detailed(f: &QFormula, exec: Exec) -> ClosedForm {
    use IdentityId::*;
    let n = f.n as i64;
    let param = f.param.unwrap_or(0);
    let mut enumerated = BTreeMap::new();
    let mut g = |family: Family, len: usize, stat: Stat| {
        let spec = GenFunSpec::weighted(family, len, stat).scaled(2);
        let (poly, count) = genfun_counted(&spec, exec);
        enumerated.insert(format!("{}_{}", family.name(), len), count);
        poly
    };
    let q = LaurentPoly::q;
    let one = LaurentPoly::one;
    let q_inv = || LaurentPoly::monomial(1, -1);
    let m = f.n;
    let poly = match f.id {
        JdDes => joint_des(n, param),
        JdLead => {
            let ell = param;
            let mut acc = LaurentPoly::zero();
            for k in 0..=(n + 1) / 2 {
                let term = &q_binomial((n + 1) / 2 - 1, k) * &q_binomial(n / 2 - ell + 1, k);
                acc += &term.shift(k * k + k * ell + ell - 1);
            }
            acc
        }
        LeadI => &q_inv() * &g(Family::I321, 2 * m, Stat::Lead),
        LeadII => &(q_inv() - one()) * &g(Family::I321, 2 * m + 1, Stat::Lead),
        LeadIII => &(q_inv().scale(&2.into()) - one()) * &g(Family::I321, 2 * m + 1, Stat::Lead),
        LeadIV => {
            let odd = &(q_inv() - one()) * &g(Family::I321, 2 * m + 1, Stat::Lead);
            odd + g(Family::I321, 2 * m, Stat::Lead)
        }
        Des321I => g(Family::I321, 2 * m, Stat::Des),
        Des321II => &(one() - q()) * &g(Family::I321, 2 * m, Stat::Des),
        Des321III => g(Family::I321, m, Stat::Des),
        Des123I => g(Family::I123, 2 * m, Stat::Des).shift(1),
        Des123II => (&(one() - q()) * &g(Family::I123, 2 * m, Stat::Des)).shift(2),
        Des123III => {
            let sign = if m.is_multiple_of(2) { 1 } else { -1 };
            g(Family::I123, m, Stat::Des).shift(2).scale(&sign.into())
        }
        Cor123 => {
            let k = param;
            let product = &q_binomial((n + 1) / 2, k) * &q_binomial(n / 2, k);
            product.shift(n * (n - 1) / 2 + k * k - n * k)
        }
        ArOdd => g(Family::S321, m, Stat::Ldes),
        ArEven => &(one() - q()) * &g(Family::S321, m, Stat::Ldes),
        Ss => {
            if m % 2 == 1 {
                LaurentPoly::constant(catalan((n - 1) / 2))
            } else {
                LaurentPoly::zero()
            }
        }
    };
    ClosedForm { poly, enumerated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::binomial;

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn rhs(id: IdentityId, n: usize, param: Option<i64>) -> LaurentPoly {
        closed_form(&QFormula::new(id, n, param).unwrap(), Exec::Sequential)
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(rhs(IdentityId::JdDes, 3, Some(1)), poly("q + q^2"));
        assert_eq!(rhs(IdentityId::LeadI, 1, None), poly("q + q^3"));
        for n in 1..=8usize {
            let total = (0..n as i64)
                .map(|k| rhs(IdentityId::Cor123, n, Some(k)).evaluate(1).unwrap())
                .fold(num_bigint::BigInt::from(0), |a, b| a + b);
            assert_eq!(total, binomial(n as i64, n as i64 / 2), "n={n}");
        }
        assert_eq!(rhs(IdentityId::Ss, 5, None), LaurentPoly::constant(2));
        assert!(rhs(IdentityId::Ss, 4, None).is_zero());
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            QFormula::new(IdentityId::JdDes, 3, None),
            Err(FormulaError::MissingParam { name: "k", .. })
        ));
        assert!(matches!(
            QFormula::new(IdentityId::LeadI, 3, Some(1)),
            Err(FormulaError::UnexpectedParam { .. })
        ));
        assert!(matches!(
            QFormula::new(IdentityId::LeadI, 0, None),
            Err(FormulaError::SizeTooSmall { .. })
        ));
        assert!(QFormula::new(IdentityId::JdLead, 3, Some(0)).is_err());
        assert!(QFormula::new(IdentityId::JdDes, 0, Some(0)).is_ok());
    }

    #[test]
    fn identity_names_parse() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!("lead-iii".parse::<IdentityId>().unwrap(), IdentityId::LeadIII);
        assert_eq!("ar_odd".parse::<IdentityId>().unwrap(), IdentityId::ArOdd);
        assert!("Lead-V".parse::<IdentityId>().is_err());
    }
}
