//! Error type shared by the whole crate.

use alloc::string::String;
use core::fmt;

/// Reasons a chain can fail structural validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainFault {
    /// A family's gamma sequence is not strictly increasing.
    NonIncreasingGamma,
    /// An augmentation radius lies below the value of its key polynomial.
    RadiusBelowKeyValue,
    /// A stable family record is followed by further records.
    StableFamilyNotLast,
    /// The Gauss seed radius is not in the base field's value group.
    SeedNotSimple,
    /// A key polynomial is not monic.
    KeyNotMonic,
    /// A key polynomial is constant (or zero).
    ConstantKey,
    /// The previous valuation already sends this key to infinity.
    KeyInKernel,
    /// A family's keys do not all share one degree.
    UnequalFamilyDegrees,
    /// A family's keys do not have a constant base value.
    FamilyValueNotConstant,
    /// A family's declared gamma limit lies below its last listed gamma.
    GammaLimitBelowFamily,
    /// A family prefix has no stages.
    EmptyFamily,
    /// A finite-extension problem needs a final record with an infinite radius.
    FinalRecordNotInfinite,
    /// A finite-extension minimal polynomial has a coefficient of negative
    /// valuation.
    CoefficientsNotIntegral,
}

impl fmt::Display for ChainFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChainFault::NonIncreasingGamma => "family gammas are not strictly increasing",
            ChainFault::RadiusBelowKeyValue => "radius is below the value of the key polynomial",
            ChainFault::StableFamilyNotLast => "stable family record is not the last record",
            ChainFault::SeedNotSimple => {
                "seed radius is not in the base value group; \
                 prefix an ordinary augmentation over a simple seed instead"
            }
            ChainFault::KeyNotMonic => "key polynomial is not monic",
            ChainFault::ConstantKey => "key polynomial is constant",
            ChainFault::KeyInKernel => "key polynomial already has value infinity",
            ChainFault::UnequalFamilyDegrees => "family keys do not share one degree",
            ChainFault::FamilyValueNotConstant => "family keys do not have a constant base value",
            ChainFault::GammaLimitBelowFamily => "declared gamma limit is below the last gamma",
            ChainFault::EmptyFamily => "family prefix is empty",
            ChainFault::FinalRecordNotInfinite => {
                "finite-extension problem needs a final ordinary or limit record \
                 with radius infinity"
            }
            ChainFault::CoefficientsNotIntegral => {
                "minimal polynomial has a coefficient of negative valuation"
            }
        };
        f.write_str(s)
    }
}

/// Crate-wide error enum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two quadratic values with distinct radicals were compared where a single
    /// radical is required.
    MixedIrrationals,
    /// A requested constant's valuation is not in the field's value group.
    NotInValueGroup,
    /// phi-adic expansion was asked for a constant phi.
    ConstantPhi,
    /// Polynomial division by the zero polynomial.
    DivisionByZeroPoly,
    /// A family prefix is too short to witness stabilization of a needed value.
    FamilyPrefixTooShort,
    /// A chain failed structural validation.
    InvalidChain(ChainFault),
    /// A w-optimality check was missing the target value of some key polynomial.
    MissingTargetValue,
    /// An enlargement was requested with mu below v(phi).
    InvalidRadius,
    /// An enlargement stage schedule needs an irrational that is not supported
    /// (only single quadratic radicals are representable).
    UnsupportedIrrational,
    /// An operation that needs a valuation (trivial kernel) met a kernel.
    KernelPresent,
    /// Subtraction of infinity from a value is undefined.
    InfinityArithmetic,
    /// Input text could not be parsed.
    Parse(String),
    /// A module presentation had an entry outside the valuation ring.
    InvalidPresentation,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MixedIrrationals => f.write_str("values carry distinct radicals"),
            Error::NotInValueGroup => f.write_str("valuation is not in the value group"),
            Error::ConstantPhi => f.write_str("phi must be non-constant"),
            Error::DivisionByZeroPoly => f.write_str("polynomial division by zero"),
            Error::FamilyPrefixTooShort => {
                f.write_str("family prefix too short to witness stabilization")
            }
            Error::InvalidChain(fault) => write!(f, "invalid chain: {fault}"),
            Error::MissingTargetValue => f.write_str("missing target value for a key polynomial"),
            Error::InvalidRadius => f.write_str("mu must be at least v(phi)"),
            Error::UnsupportedIrrational => {
                f.write_str("only rational and single-radical quadratic values are supported here")
            }
            Error::KernelPresent => f.write_str("the realized valuation has a nonzero kernel"),
            Error::InfinityArithmetic => f.write_str("cannot subtract infinity"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InvalidPresentation => {
                f.write_str("presentation entry lies outside the valuation ring")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
