//! Almost periodicity: a multiplier x ∈ M(A) is detected as almost
//! periodic when δ(x) factors through M(A)⊗M(A), i.e. when the span of the
//! right slices of δ(x) is finite-dimensional on stabilizing windows.

use crate::algebra::multiplier::Multiplier;
use crate::dqg::descriptor::DQGDescriptor;
use crate::error::Error;
use crate::matrix::RankPolicy;
use crate::slice::factor::{factor, Factorization};

#[derive(Debug)]
pub enum AlmostPeriodicVerdict {
    /// δ(x) = Σ_k x_k ⊗ y_k with the verified factorization attached.
    AlmostPeriodic(Factorization),
    /// The slice span kept growing for every window in the budget; not
    /// almost periodic at this scale.
    Undecided { budget: usize, history: Vec<usize> },
}

pub fn almost_periodic(
    x: &Multiplier,
    dqg: &DQGDescriptor,
    budget: usize,
    patience: usize,
    policy: &RankPolicy,
    tol: f64,
) -> Result<AlmostPeriodicVerdict, Error> {
    let y = dqg.coproduct_of_multiplier(x);
    match factor(&y, dqg.haar(), budget, patience, policy, tol) {
        Ok(f) => Ok(AlmostPeriodicVerdict::AlmostPeriodic(f)),
        Err(Error::BudgetExceeded { budget, history }) => {
            Ok(AlmostPeriodicVerdict::Undecided { budget, history })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::element::Element;
    use crate::algebra::group::GroupModel;
    use crate::algebra::index::BlockIndex;
    use crate::algebra::multiplier::{BlockRule, IntFormula, IntTerm};
    use crate::scalar::Scalar;

    #[test]
    fn characters_are_almost_periodic() {
        let dqg = DQGDescriptor::dual_of_group(GroupModel::Integers);
        let chi = Multiplier::new(
            dqg.algebra(),
            BlockRule::IntFormula(IntFormula {
                terms: vec![(Scalar::one(), IntTerm::CharacterExact { quarter_turns: 3 })],
            }),
        );
        match almost_periodic(&chi, &dqg, 4, 2, &RankPolicy::default(), 1e-7).unwrap() {
            AlmostPeriodicVerdict::AlmostPeriodic(f) => assert_eq!(f.terms.len(), 1),
            other => panic!("expected almost periodic, got {other:?}"),
        }
    }

    #[test]
    fn point_mass_multiplier_is_undecided() {
        let dqg = DQGDescriptor::dual_of_group(GroupModel::Integers);
        let x = Multiplier::embed_element(&Element::delta(dqg.algebra(), BlockIndex::Int(0)));
        match almost_periodic(&x, &dqg, 4, 2, &RankPolicy::default(), 1e-7).unwrap() {
            AlmostPeriodicVerdict::Undecided { budget, history } => {
                assert_eq!(budget, 4);
                assert_eq!(history, vec![9, 17, 33, 65]);
            }
            other => panic!("expected undecided, got {other:?}"),
        }
    }

    #[test]
    fn every_multiplier_of_finite_model_is_almost_periodic() {
        let dqg = DQGDescriptor::dual_of_group(GroupModel::symmetric(3));
        let x = Multiplier::embed_element(&Element::delta(dqg.algebra(), BlockIndex::Fin(4)));
        match almost_periodic(&x, &dqg, 4, 2, &RankPolicy::default(), 1e-7).unwrap() {
            AlmostPeriodicVerdict::AlmostPeriodic(f) => assert_eq!(f.terms.len(), 6),
            other => panic!("expected almost periodic, got {other:?}"),
        }
    }
}
