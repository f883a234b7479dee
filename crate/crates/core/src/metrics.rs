//! Readability metrics: clutter, proof length, clutter velocity.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::diagram::{CompoundDiagram, UnitaryDiagram};
use crate::engine::{Proof, ProofState, StepKind};

/// Which parts of a proof the metrics look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricsConfig {
    /// Count consequent diagrams towards state clutter.
    pub include_consequents: bool,
    /// Count discharge steps towards proof length.
    pub count_discharges: bool,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig {
            include_consequents: true,
            count_discharges: true,
        }
    }
}

impl MetricsConfig {
    pub fn antecedent_only() -> Self {
        MetricsConfig {
            include_consequents: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofMetrics {
    pub length: usize,
    pub total_clutter: u64,
    #[serde(serialize_with = "ratio_json")]
    pub average_clutter: Ratio<u64>,
    pub max_velocity: u64,
}

fn ratio_json<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Frac {
        num: u64,
        den: u64,
    }
    Frac {
        num: *r.numer(),
        den: *r.denom(),
    }
    .serialize(s)
}

impl ProofMetrics {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("metrics serialize")
    }
}

pub fn clutter_unitary(d: &UnitaryDiagram) -> u64 {
    (d.zones().len() + d.shaded().len()) as u64
}

pub fn clutter_diagram(d: &CompoundDiagram) -> u64 {
    d.unitaries().into_iter().map(clutter_unitary).sum()
}

pub fn clutter_state(s: &ProofState) -> u64 {
    clutter_state_with(s, MetricsConfig::default())
}

pub fn clutter_state_with(s: &ProofState, config: MetricsConfig) -> u64 {
    s.subgoals()
        .iter()
        .map(|g| {
            let c = if config.include_consequents {
                clutter_diagram(g.consequent())
            } else {
                0
            };
            clutter_diagram(g.antecedent()) + c
        })
        .sum()
}

pub fn proof_metrics(p: &Proof) -> ProofMetrics {
    proof_metrics_with(p, MetricsConfig::default())
}

pub fn proof_metrics_with(p: &Proof, config: MetricsConfig) -> ProofMetrics {
    let per_state: Vec<u64> = p.states().map(|s| clutter_state_with(s, config)).collect();
    let total: u64 = per_state.iter().sum();
    let max_velocity = per_state
        .windows(2)
        .map(|w| w[0].abs_diff(w[1]))
        .max()
        .unwrap_or(0);
    let length = if config.count_discharges {
        p.len()
    } else {
        p.steps()
            .iter()
            .filter(|s| matches!(s.kind, StepKind::Rule(_)))
            .count()
    };
    ProofMetrics {
        length,
        total_clutter: total,
        average_clutter: Ratio::new(total, per_state.len() as u64),
        max_velocity,
    }
}

/// The largest clutter of any single state in the proof.
pub fn max_state_clutter(p: &Proof) -> u64 {
    p.states().map(clutter_state).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{labels, Zone};
    use crate::engine::Subgoal;
    use crate::rules::{Rule, RuleApplication};
    use crate::diagram::Path;

    fn z(names: &[&str]) -> Zone {
        Zone::from_names(names.iter().copied()).unwrap()
    }

    fn d1() -> UnitaryDiagram {
        UnitaryDiagram::new(
            labels(["A", "B", "C"]).unwrap(),
            [z(&[]), z(&["A"]), z(&["B"]), z(&["C"])].into(),
            [z(&["A"])].into(),
        )
        .unwrap()
    }

    #[test]
    fn unitary_clutter() {
        assert_eq!(clutter_unitary(&d1()), 5);
        assert_eq!(clutter_unitary(&UnitaryDiagram::venn(labels(["A", "B"]).unwrap())), 4);
        assert_eq!(clutter_unitary(&UnitaryDiagram::venn(Default::default())), 1);
    }

    #[test]
    fn state_clutter() {
        assert_eq!(clutter_state(&ProofState::default()), 0);
        let g = Subgoal::new(d1().into(), d1().into()).unwrap();
        let s = ProofState::new(vec![g.clone()]);
        assert_eq!(clutter_state(&s), 10);
        assert_eq!(clutter_state_with(&s, MetricsConfig::antecedent_only()), 5);
        assert_eq!(clutter_state(&ProofState::new(vec![g.clone(), g])), 20);
    }

    #[test]
    fn fresh_and_stepped_proofs() {
        let p = Proof::new(Subgoal::new(d1().into(), d1().into()).unwrap());
        let m = proof_metrics(&p);
        assert_eq!(m.length, 0);
        assert_eq!(m.max_velocity, 0);
        assert_eq!(m.total_clutter, 10);
        assert_eq!(m.average_clutter, Ratio::from_integer(10));

        let p = p
            .apply_rule(RuleApplication {
                goal_index: 0,
                path: Path::root(),
                rule: Rule::IntroduceShadedZone(z(&["A", "B"])),
            })
            .unwrap();
        let m = proof_metrics(&p);
        assert_eq!(m.length, 1);
        assert_eq!(m.max_velocity, 2);
        assert_eq!(m.total_clutter, 22);
        assert_eq!(m.average_clutter, Ratio::new(11, 1));
        assert_eq!(
            m.to_json(),
            serde_json::json!({
                "length": 1, "total_clutter": 22,
                "average_clutter": {"num": 11, "den": 1}, "max_velocity": 2
            })
        );
    }

    #[test]
    fn discharge_counting_is_configurable() {
        let p = Proof::new(Subgoal::new(d1().into(), d1().into()).unwrap())
            .discharge_trivial(0)
            .unwrap();
        assert_eq!(proof_metrics(&p).length, 1);
        let no_discharge = MetricsConfig {
            count_discharges: false,
            ..MetricsConfig::default()
        };
        assert_eq!(proof_metrics_with(&p, no_discharge).length, 0);
        assert_eq!(proof_metrics(&p).max_velocity, 10);
        assert_eq!(proof_metrics(&p).average_clutter, Ratio::new(5, 1));
    }
}
