//! Single-mode BFT consensus in the Tendermint style.
//!
//! Validators move through propose/prevote/precommit rounds per height,
//! collecting votes weighted by voting power. A phase that cannot gather a
//! quorum times out and the next round begins with a longer timeout, so
//! leader replacement needs no separate view-change mode. The voting lock
//! keeps two honest validators from ever committing different values at one
//! height while Byzantine power stays below one third.
//!
//! This crate is transport-free: [`ValidatorState::handle_event`] maps one
//! event to outputs (broadcasts, timer requests, decisions) and the caller
//! owns all scheduling, which keeps runs exactly reproducible.

mod leader;
mod machine;

pub use leader::{select_leader, LeaderSchedule};
pub use machine::{
    decision_consistency, DecisionRecord, Event, Message, Output, Payload, ProposalEnv, Step,
    ValidatorState,
};

use thiserror::Error;

pub type ValidatorId = u32;
pub type Power = u64;
pub type Digest = [u8; 32];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Validator {
    pub id: ValidatorId,
    pub power: Power,
}

/// Base timeout and per-round increment, simulated milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeoutConfig {
    pub base_ms: u64,
    pub delta_ms: u64,
}

impl TimeoutConfig {
    pub fn validate(&self) -> Result<(), ConsensusError> {
        if self.base_ms == 0 {
            return Err(ConsensusError::ZeroBaseTimeout);
        }
        Ok(())
    }
}

/// Closed form of the escalating round timeout
/// `timeout(r) = timeout(r-1) + r * delta`, i.e.
/// `base + delta * r * (r + 1) / 2` milliseconds.
pub fn timeout_duration(round: u32, cfg: &TimeoutConfig) -> u64 {
    let r = round as u64;
    cfg.base_ms + cfg.delta_ms * (r * (r + 1) / 2)
}

/// Smallest voting power strictly greater than two thirds of the total.
/// With N equal-weight validators this is the classic N − f.
pub fn quorum_power(validators: &[Validator]) -> Power {
    let total: Power = validators.iter().map(|v| v.power).sum();
    2 * total / 3 + 1
}

#[derive(Debug, Error)]
pub enum ConsensusError {
    #[error("validator set is empty")]
    EmptyValidatorSet,
    #[error("validator {id} has zero voting power")]
    ZeroPower { id: ValidatorId },
    #[error("validator {id} is not in the validator set")]
    UnknownValidator { id: ValidatorId },
    #[error("base timeout must be positive")]
    ZeroBaseTimeout,
}
