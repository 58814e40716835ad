use thiserror::Error;

/// Errors raised by validation and enumeration routines.
///
/// Variants carry enough context to name the violating element, pair or
/// triple, so failures in model files can be reported precisely.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("set is not closed under multiplication at ({a}, {b})")]
    NotClosed { a: usize, b: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {a} has no inverse")]
    NoInverse { a: usize },
    #[error("enumeration bound exceeded: {what} needs {needed}, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        needed: u64,
        bound: u64,
    },
    #[error("the given member set is not a subgroup (offending element {witness})")]
    NotASubgroup { witness: usize },
    #[error("subgroup is not normal: conjugation by {by} moves {moved} outside")]
    NotNormal { by: usize, moved: usize },
    #[error("map at {at} is not an automorphism of the kernel group")]
    NotIntoAut { at: usize },
    #[error("map is not a homomorphism: ({a}, {b}) violates multiplicativity")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("action is not a homomorphism into Aut(G) (gamma element {gamma})")]
    ActNotHom { gamma: usize },
    #[error("cyclotomic character is not a homomorphism (pair ({a}, {b}))")]
    ChiNotHom { a: usize, b: usize },
    #[error("cyclotomic character value {value} is not a unit mod {modulus}")]
    ChiNotUnit { value: u64, modulus: u64 },
    #[error("map is not Gamma-equivariant (gamma {gamma}, element {element})")]
    NotEquivariant { gamma: usize, element: usize },
    #[error("map is not injective: {a} and {b} collide")]
    NotInjective { a: usize, b: usize },
    #[error("nontrivial point {point} maps to the basepoint")]
    TrivialKernelViolated { point: usize },
    #[error("map violates the cocycle identity at ({a}, {b})")]
    NotACocycle { a: usize, b: usize },
    #[error("phi is not Gamma-equivariant (gamma {gamma}, element {element})")]
    PhiNotEquivariant { gamma: usize, element: usize },
    #[error("operands live over different Gamma groups")]
    GammaMismatch,
    #[error("subgroup is not Gamma-stable (gamma {gamma} moves {moved})")]
    NotStable { gamma: usize, moved: usize },
    #[error("sigma value at gamma {gamma} does not come from the complement subgroup")]
    SigmaNotFromK { gamma: usize },
    #[error("place {label}: {reason}")]
    PlaceNotInGamma { label: String, reason: String },
    #[error("place {label} is malformed: {reason}")]
    InvalidPlace { label: String, reason: String },
    #[error("no usable place for element {element}: {reason}")]
    InsufficientPlaces { element: usize, reason: String },
    #[error("permutation action is not faithful: elements {a} and {b} act identically")]
    NotFaithful { a: usize, b: usize },
    #[error("counting function is not Gamma-invariant (gamma {gamma} moves point {point} across values)")]
    NotGammaInvariant { gamma: usize, point: usize },
    #[error("counting function vanishes at the nontrivial point {point}")]
    VanishesOffBasepoint { point: usize },
    #[error("the trivial group carries no counting invariants")]
    TrivialGroup,
    #[error("no override for place {label}, local class {class}")]
    MissingOverride { label: String, class: usize },
    #[error("cocycle is ramified at place {label}, which is outside the evaluation list")]
    RamifiedOutsideList { label: String },
    #[error("height exponent at prime {prime} is the non-integer {exponent}; the value is irrational")]
    IrrationalHeight { prime: u64, exponent: String },
    #[error("unsupported modulus {m}: supported values are 2, 3, 5")]
    UnsupportedModulus { m: u64 },
    #[error("growth fit needs at least 4 samples spanning two decades: {reason}")]
    InsufficientSamples { reason: String },
    #[error("group is not semicommutative")]
    NotSemicommutative,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit status used by the command line front end: bound overruns are
    /// distinguished from plain validation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundExceeded { .. } => 3,
            _ => 2,
        }
    }

    /// Stable machine-readable tag for JSON error bodies.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonAssociative { .. } => "NonAssociative",
            Error::NotClosed { .. } => "NotClosed",
            Error::NoIdentity => "NoIdentity",
            Error::NoInverse { .. } => "NoInverse",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::NotASubgroup { .. } => "NotASubgroup",
            Error::NotNormal { .. } => "NotNormal",
            Error::NotIntoAut { .. } => "NotIntoAut",
            Error::NotAHomomorphism { .. } => "NotAHomomorphism",
            Error::ActNotHom { .. } => "ActNotHom",
            Error::ChiNotHom { .. } => "ChiNotHom",
            Error::ChiNotUnit { .. } => "ChiNotUnit",
            Error::NotEquivariant { .. } => "NotEquivariant",
            Error::NotInjective { .. } => "NotInjective",
            Error::TrivialKernelViolated { .. } => "TrivialKernelViolated",
            Error::NotACocycle { .. } => "NotACocycle",
            Error::PhiNotEquivariant { .. } => "PhiNotEquivariant",
            Error::GammaMismatch => "GammaMismatch",
            Error::NotStable { .. } => "NotStable",
            Error::SigmaNotFromK { .. } => "SigmaNotFromK",
            Error::PlaceNotInGamma { .. } => "PlaceNotInGamma",
            Error::InvalidPlace { .. } => "InvalidPlace",
            Error::InsufficientPlaces { .. } => "InsufficientPlaces",
            Error::NotFaithful { .. } => "NotFaithful",
            Error::NotGammaInvariant { .. } => "NotGammaInvariant",
            Error::VanishesOffBasepoint { .. } => "VanishesOffBasepoint",
            Error::TrivialGroup => "TrivialGroup",
            Error::MissingOverride { .. } => "MissingOverride",
            Error::RamifiedOutsideList { .. } => "RamifiedOutsideList",
            Error::IrrationalHeight { .. } => "IrrationalHeight",
            Error::UnsupportedModulus { .. } => "UnsupportedModulus",
            Error::InsufficientSamples { .. } => "InsufficientSamples",
            Error::NotSemicommutative => "NotSemicommutative",
            Error::Invalid(_) => "Invalid",
        }
    }
}
