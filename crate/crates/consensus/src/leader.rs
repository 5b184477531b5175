//! Deterministic weighted round-robin proposer selection.
//!
//! Each (height, round) slot advances a priority accumulator: every
//! validator gains its voting power, the maximum priority wins (ties to the
//! lowest id), and the winner pays the total power back. Over any window of
//! `total_power` consecutive slots each validator is selected exactly
//! `power` times.

use crate::{ConsensusError, Validator, ValidatorId};

/// Proposer for a (height, round) slot. Slot number `height + round` is
/// recomputed from a zero accumulator so the function stays pure.
pub fn select_leader(
    validators: &[Validator],
    height: u64,
    round: u32,
) -> Result<ValidatorId, ConsensusError> {
    if validators.is_empty() {
        return Err(ConsensusError::EmptyValidatorSet);
    }
    if let Some(v) = validators.iter().find(|v| v.power == 0) {
        return Err(ConsensusError::ZeroPower { id: v.id });
    }
    let total: i128 = validators.iter().map(|v| v.power as i128).sum();
    let mut priority: Vec<i128> = vec![0; validators.len()];
    let steps = height.saturating_add(round as u64).max(1);
    let mut winner = 0usize;
    for _ in 0..steps {
        for (i, v) in validators.iter().enumerate() {
            priority[i] += v.power as i128;
        }
        winner = 0;
        for i in 1..validators.len() {
            let better = priority[i] > priority[winner]
                || (priority[i] == priority[winner] && validators[i].id < validators[winner].id);
            if better {
                winner = i;
            }
        }
        priority[winner] -= total;
    }
    Ok(validators[winner].id)
}

/// Incremental form of [`select_leader`]: keeps the accumulator and a cache
/// of decided slots so repeated queries stay O(N) per new slot. Agrees with
/// the pure function on every slot.
#[derive(Debug, Clone)]
pub struct LeaderSchedule {
    validators: Vec<Validator>,
    total: i128,
    priority: Vec<i128>,
    leaders: Vec<ValidatorId>,
}

impl LeaderSchedule {
    pub fn new(validators: &[Validator]) -> Result<Self, ConsensusError> {
        if validators.is_empty() {
            return Err(ConsensusError::EmptyValidatorSet);
        }
        if let Some(v) = validators.iter().find(|v| v.power == 0) {
            return Err(ConsensusError::ZeroPower { id: v.id });
        }
        Ok(LeaderSchedule {
            total: validators.iter().map(|v| v.power as i128).sum(),
            priority: vec![0; validators.len()],
            leaders: Vec::new(),
            validators: validators.to_vec(),
        })
    }

    pub fn leader(&mut self, height: u64, round: u32) -> ValidatorId {
        let slot = height.saturating_add(round as u64).max(1) as usize;
        while self.leaders.len() < slot {
            for (i, v) in self.validators.iter().enumerate() {
                self.priority[i] += v.power as i128;
            }
            let mut winner = 0;
            for i in 1..self.validators.len() {
                let better = self.priority[i] > self.priority[winner]
                    || (self.priority[i] == self.priority[winner]
                        && self.validators[i].id < self.validators[winner].id);
                if better {
                    winner = i;
                }
            }
            self.priority[winner] -= self.total;
            self.leaders.push(self.validators[winner].id);
        }
        self.leaders[slot - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn equal(n: u32) -> Vec<Validator> {
        (0..n).map(|id| Validator { id, power: 1 }).collect()
    }

    #[test]
    fn schedule_agrees_with_the_pure_function() {
        let vals = vec![
            Validator { id: 0, power: 3 },
            Validator { id: 1, power: 1 },
            Validator { id: 2, power: 2 },
        ];
        let mut sched = LeaderSchedule::new(&vals).unwrap();
        for h in 1..50u64 {
            for r in 0..4u32 {
                assert_eq!(sched.leader(h, r), select_leader(&vals, h, r).unwrap());
            }
        }
    }

    #[test]
    fn equal_powers_cycle() {
        let vals = equal(4);
        let order: Vec<ValidatorId> = (1..=8)
            .map(|h| select_leader(&vals, h, 0).unwrap())
            .collect();
        assert_eq!(order, [0, 1, 2, 3, 0, 1, 2, 3]);
    }

    #[test]
    fn rounds_shift_the_slot() {
        let vals = equal(4);
        assert_eq!(select_leader(&vals, 1, 0).unwrap(), 0);
        assert_eq!(select_leader(&vals, 1, 1).unwrap(), 1);
        assert_eq!(select_leader(&vals, 1, 3).unwrap(), 3);
    }

    #[test]
    fn weighted_window_matches_powers() {
        // Powers {A:2, B:1, C:1}: four consecutive slots pick A twice.
        let vals = vec![
            Validator { id: 0, power: 2 },
            Validator { id: 1, power: 1 },
            Validator { id: 2, power: 1 },
        ];
        let picks: Vec<ValidatorId> = (1..=4)
            .map(|h| select_leader(&vals, h, 0).unwrap())
            .collect();
        let count = |id| picks.iter().filter(|&&p| p == id).count();
        assert_eq!(count(0), 2);
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 1);
    }

    #[test]
    fn single_validator_always_selected() {
        let vals = vec![Validator { id: 9, power: 5 }];
        for h in 1..20 {
            assert_eq!(select_leader(&vals, h, 0).unwrap(), 9);
        }
    }

    #[test]
    fn frequencies_are_exactly_proportional_over_full_windows() {
        let vals = vec![
            Validator { id: 0, power: 3 },
            Validator { id: 1, power: 2 },
            Validator { id: 2, power: 1 },
        ];
        let total = 6u64;
        let windows = 1_000u64;
        let mut counts = [0u64; 3];
        for h in 1..=(total * windows) {
            counts[select_leader(&vals, h, 0).unwrap() as usize] += 1;
        }
        assert_eq!(counts, [3 * windows, 2 * windows, windows]);
    }

    #[test]
    fn empty_set_is_an_error() {
        assert!(matches!(
            select_leader(&[], 1, 0),
            Err(ConsensusError::EmptyValidatorSet)
        ));
    }
}
