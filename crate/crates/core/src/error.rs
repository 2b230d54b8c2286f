use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} outside the supported range 2..=251")]
    CharacteristicOutOfRange(u32),
    #[error("invalid modulus {modulus:?}: {reason}")]
    BadModulus { modulus: Vec<u32>, reason: String },
    #[error("modulus {modulus:?} is reducible: it is divisible by {factor:?}")]
    Reducible { modulus: Vec<u32>, factor: Vec<u32> },
    #[error("field of order {0} exceeds the cap of 65536 elements")]
    FieldTooLarge(u64),
    #[error("invalid element {value} for a field of order {order}")]
    InvalidElement { value: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("the requested field is not a subfield of the element's field")]
    NotSubfield,
    #[error("elements do not form a basis over the prime field")]
    NotABasis,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{what}: {count} items exceed the enumeration budget of {budget}")]
    BudgetExceeded { what: String, count: u128, budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("map is not an isometry on the code: {0}")]
    NotIsometry(String),
    #[error("not applicable: {0}")]
    Inapplicable(String),
    #[error("not a subcode: {0}")]
    NotSubcode(String),
    #[error("non-integral result: {0}")]
    NonIntegral(String),
    #[error("negative term: {0}")]
    NegativeTerm(String),
    #[error("q-polymatroid axiom violated: {0}")]
    AxiomViolation(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(String),
}

/// Upper bound on the number of objects any exhaustive search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    pub fn check(self, what: &str, count: u128) -> Result<()> {
        if count > self.0 as u128 {
            Err(Error::BudgetExceeded {
                what: what.to_string(),
                count,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
