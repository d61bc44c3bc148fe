//! Interchangeable ways of producing the weight table of a Weyl module,
//! registered by name so callers can run several and compare.

use crate::characters::{
    c1_for_partition, c2_recurrence, c2_weight_table, cl_weight_table, TableMethod,
};
use crate::coinvariants::{CoinvariantConfig, DiagonalCoinvariants};
use crate::error::{Error, Result};
use crate::exactnum::ExactInt;
use crate::formulas::{
    dim_weyl, double_point_dim, double_point_table, is_conjectural, truncated_catalan,
    weyl_weight_table, AlgebraPresentation,
};
use crate::partitions::{Partition, WeightTable};

/// The module W^A(ξ) for gl_r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleQuery {
    pub algebra: AlgebraPresentation,
    pub r: usize,
    pub xi: Partition,
    /// Cap on materialized monomials for the coinvariant oracle.
    pub budget: u128,
}

impl ModuleQuery {
    pub fn new(algebra: AlgebraPresentation, r: usize, xi: Partition) -> Self {
        ModuleQuery {
            algebra,
            r,
            xi,
            budget: crate::parking::DEFAULT_BUDGET,
        }
    }

    /// n when ξ = (n) is a single row (or empty).
    pub fn row_length(&self) -> Option<u32> {
        (self.xi.len() <= 1).then(|| self.xi.first())
    }

    fn require_row(&self, method: &str) -> Result<u32> {
        self.row_length().ok_or_else(|| {
            Error::Unsupported(format!(
                "method `{method}` only handles ξ = (n), got {}",
                self.xi
            ))
        })
    }
}

pub trait WeylMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn weights(&self, q: &ModuleQuery) -> Result<WeightTable>;

    fn dim(&self, q: &ModuleQuery) -> Result<ExactInt> {
        Ok(self.weights(q)?.total())
    }

    /// A caveat attached to results that rest on an unproved statement.
    fn caveat(&self, _q: &ModuleQuery) -> Option<&'static str> {
        None
    }
}

/// Closed formulas.
pub struct FormulaMethod;

impl WeylMethod for FormulaMethod {
    fn name(&self) -> &'static str {
        "formula"
    }

    fn description(&self) -> &'static str {
        "closed dimension and weight formulas"
    }

    fn weights(&self, q: &ModuleQuery) -> Result<WeightTable> {
        match q.algebra {
            AlgebraPresentation::Polynomial(1) => c1_for_partition(q.r, &q.xi),
            AlgebraPresentation::Polynomial(d) => {
                weyl_weight_table(d, q.r as u32, q.require_row(self.name())?)
            }
            AlgebraPresentation::DoublePoint => {
                double_point_table(q.r as u32, q.require_row(self.name())?)
            }
            AlgebraPresentation::XlLine(1) => c1_for_partition(q.r, &q.xi),
            AlgebraPresentation::XlLine(_) => Err(Error::Unsupported(
                "no closed weight formula for C[x,y]/(x^l), l > 1".into(),
            )),
        }
    }

    fn dim(&self, q: &ModuleQuery) -> Result<ExactInt> {
        match q.algebra {
            AlgebraPresentation::Polynomial(d) if d != 1 => {
                dim_weyl(d, q.r as u32, q.require_row(self.name())?)
            }
            AlgebraPresentation::DoublePoint => {
                double_point_dim(q.r as u32, q.require_row(self.name())?)
            }
            AlgebraPresentation::XlLine(l) if l > 1 && q.r == 2 => {
                truncated_catalan(l, q.require_row(self.name())? + 1)
            }
            _ => Ok(self.weights(q)?.total()),
        }
    }

    fn caveat(&self, q: &ModuleQuery) -> Option<&'static str> {
        match q.algebra {
            AlgebraPresentation::Polynomial(d) if is_conjectural(d) => Some("conjectural formula"),
            _ => None,
        }
    }
}

/// Parking-function subset model, filtered for truncated families.
pub struct EnumerateMethod;

impl WeylMethod for EnumerateMethod {
    fn name(&self) -> &'static str {
        "enumerate"
    }

    fn description(&self) -> &'static str {
        "generalized parking function (subset model) enumeration"
    }

    fn weights(&self, q: &ModuleQuery) -> Result<WeightTable> {
        match q.algebra {
            AlgebraPresentation::Polynomial(2) => c2_weight_table(q.r, &q.xi),
            // C[x,y]/(x) is the one-variable case
            AlgebraPresentation::Polynomial(1) => cl_weight_table(q.r, &q.xi, 1, TableMethod::Enumerate),
            AlgebraPresentation::XlLine(l) => cl_weight_table(q.r, &q.xi, l, TableMethod::Enumerate),
            a => Err(Error::Unsupported(format!("no enumeration model for {a}"))),
        }
    }

    fn caveat(&self, q: &ModuleQuery) -> Option<&'static str> {
        match q.algebra {
            AlgebraPresentation::Polynomial(2) if q.row_length().is_none() => {
                Some("conjecturally equal to W^2(ξ)")
            }
            _ => None,
        }
    }
}

/// Character recurrences built from single-column pieces.
pub struct RecurrenceMethod;

impl WeylMethod for RecurrenceMethod {
    fn name(&self) -> &'static str {
        "recurrence"
    }

    fn description(&self) -> &'static str {
        "character recurrences over boundary points"
    }

    fn weights(&self, q: &ModuleQuery) -> Result<WeightTable> {
        match q.algebra {
            AlgebraPresentation::Polynomial(2) => c2_recurrence(q.r, &q.xi),
            AlgebraPresentation::Polynomial(1) => cl_weight_table(q.r, &q.xi, 1, TableMethod::Recurrence),
            AlgebraPresentation::XlLine(l) => cl_weight_table(q.r, &q.xi, l, TableMethod::Recurrence),
            a => Err(Error::Unsupported(format!("no recurrence for {a}"))),
        }
    }

    fn caveat(&self, q: &ModuleQuery) -> Option<&'static str> {
        EnumerateMethod.caveat(q)
    }
}

/// Diagonal coinvariants computed by exact elimination.
pub struct OracleMethod;

impl WeylMethod for OracleMethod {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn description(&self) -> &'static str {
        "brute-force diagonal coinvariants with Young-subgroup averaging"
    }

    fn weights(&self, q: &ModuleQuery) -> Result<WeightTable> {
        let n = q.require_row(self.name())?;
        if n == 0 {
            return Ok(WeightTable::unit(q.r));
        }
        let mut config = CoinvariantConfig::default_for(q.algebra, n);
        config.budget = q.budget;
        DiagonalCoinvariants::compute(q.algebra, n, config)?.weight_table(q.r)
    }
}

pub struct MethodRegistry {
    methods: Vec<Box<dyn WeylMethod>>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        MethodRegistry {
            methods: Vec::new(),
        }
    }

    /// formula, enumerate, recurrence and oracle.
    pub fn standard() -> Self {
        let mut reg = MethodRegistry::empty();
        reg.register(Box::new(FormulaMethod));
        reg.register(Box::new(EnumerateMethod));
        reg.register(Box::new(RecurrenceMethod));
        reg.register(Box::new(OracleMethod));
        reg
    }

    /// Adds a method, replacing any earlier one of the same name.
    pub fn register(&mut self, method: Box<dyn WeylMethod>) {
        self.methods.retain(|m| m.name() != method.name());
        self.methods.push(method);
    }

    pub fn get(&self, name: &str) -> Result<&dyn WeylMethod> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown method `{name}` (available: {})",
                    self.names().join(", ")
                ))
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }
}
