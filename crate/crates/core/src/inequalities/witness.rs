//! Constructors for the known equality cases of the checkers.

use super::IneqError;
use crate::fourier::OperatorField;
use crate::groups::GroupSpec;
use crate::operators::CMatrix;
use crate::sample::{random_field, random_matrix, rng_from_seed};

/// Which tight case to construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// `A_theta` constant: only the trivial coefficient survives, giving
    /// equality in the p-p check (and the right cyclic corollary).
    ConstantField,
    /// `A_theta = k0(theta) M`: a single unimodular character carries all the
    /// mass, giving equality in the conjugate-exponent checks.
    SingleCharacter,
    /// All mass on one group element: every transformed sum has the same
    /// norms, giving equality in the left cyclic corollary.
    SingleSupport,
    /// Any field is tight at `p = 2` by the Parseval identity.
    PEqualsTwo,
}

impl WitnessKind {
    pub const ALL: [WitnessKind; 4] = [
        WitnessKind::ConstantField,
        WitnessKind::SingleCharacter,
        WitnessKind::SingleSupport,
        WitnessKind::PEqualsTwo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::ConstantField => "constant-field",
            WitnessKind::SingleCharacter => "single-character",
            WitnessKind::SingleSupport => "single-support",
            WitnessKind::PEqualsTwo => "p-equals-2",
        }
    }

    pub fn parse(s: &str) -> Result<Self, IneqError> {
        WitnessKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| IneqError::UnknownWitness(s.to_string()))
    }
}

/// Builds the deterministic field realizing the named equality case over the
/// given group and matrix dimension.
pub fn equality_witness(
    kind: WitnessKind,
    group: &GroupSpec,
    dim: usize,
) -> Result<OperatorField, IneqError> {
    let mut rng = rng_from_seed(0xE9A1_11CE);
    let m = random_matrix(dim, dim, &mut rng);
    let field = match kind {
        WitnessKind::ConstantField => OperatorField::constant(group.clone(), m)?,
        WitnessKind::SingleCharacter => {
            let k0 = group.characters()[1].clone();
            let values: Vec<CMatrix> = group
                .elements()
                .iter()
                .map(|theta| {
                    let w = group
                        .character_value(&k0, theta)
                        .expect("character from this group");
                    m.map(|z| z * w)
                })
                .collect();
            OperatorField::new(group.clone(), values)?
        }
        WitnessKind::SingleSupport => {
            let mut values = vec![CMatrix::zeros(dim, dim); group.order() as usize];
            values[1] = m;
            OperatorField::new(group.clone(), values)?
        }
        WitnessKind::PEqualsTwo => random_field(group, dim, &mut rng_from_seed(0xBEEF)),
    };
    Ok(field)
}
