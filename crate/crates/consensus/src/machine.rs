//! The per-validator consensus state machine.
//!
//! One mode, round-based: propose, prevote, precommit. A proposer reuses its
//! valid value when it has one; a validator that locked a value keeps
//! prevoting it until a proposal arrives carrying a valid round newer than
//! its locked round. Any step that stalls times out and the next round
//! starts with a longer timeout.
//!
//! `handle_event` is a pure deterministic transition: identical event
//! sequences against an identical environment produce identical outputs.
//! The machine tallies its own votes as it emits them, so the transport
//! must deliver broadcasts to every *other* validator exactly once, in any
//! order, without loss.

use std::collections::{BTreeMap, BTreeSet};

use crate::leader::LeaderSchedule;
use crate::{
    quorum_power, timeout_duration, ConsensusError, Digest, Power, TimeoutConfig, Validator,
    ValidatorId,
};

/// Candidate block payload: anything hashable to a 32-byte identity.
pub trait Payload: Clone + Eq + std::fmt::Debug {
    fn digest(&self) -> Digest;
}

/// Application hook: produces fresh proposal batches and judges validity.
pub trait ProposalEnv<V: Payload> {
    fn make_batch(&mut self, height: u64, round: u32) -> V;
    fn validate(&self, _value: &V) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Step {
    Propose,
    Prevote,
    Precommit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Message<V> {
    Proposal { height: u64, round: u32, value: V, valid_round: Option<u32>, sender: ValidatorId },
    Prevote { height: u64, round: u32, value: Option<Digest>, sender: ValidatorId },
    Precommit { height: u64, round: u32, value: Option<Digest>, sender: ValidatorId },
}

impl<V> Message<V> {
    pub fn height(&self) -> u64 {
        match self {
            Message::Proposal { height, .. }
            | Message::Prevote { height, .. }
            | Message::Precommit { height, .. } => *height,
        }
    }

    pub fn round(&self) -> u32 {
        match self {
            Message::Proposal { round, .. }
            | Message::Prevote { round, .. }
            | Message::Precommit { round, .. } => *round,
        }
    }

    pub fn sender(&self) -> ValidatorId {
        match self {
            Message::Proposal { sender, .. }
            | Message::Prevote { sender, .. }
            | Message::Precommit { sender, .. } => *sender,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Message::Proposal { .. } => "proposal",
            Message::Prevote { .. } => "prevote",
            Message::Precommit { .. } => "precommit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event<V> {
    /// Begin participating (enters height 1, round 0).
    Start,
    Message(Message<V>),
    Timeout { height: u64, round: u32, step: Step },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Output<V> {
    /// Deliver to every other validator; the sender has already counted its
    /// own copy.
    Broadcast(Message<V>),
    ScheduleTimeout { height: u64, round: u32, step: Step, duration_ms: u64 },
    Decision { height: u64, round: u32, value: V },
}

/// One line of the decision log.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionRecord {
    pub height: u64,
    pub round: u32,
    pub digest: Digest,
}

#[derive(Debug, Clone)]
pub struct ValidatorState<V: Payload> {
    id: ValidatorId,
    validators: Vec<Validator>,
    quorum: Power,
    timeouts: TimeoutConfig,
    schedule: LeaderSchedule,

    pub height: u64,
    pub round: u32,
    pub step: Step,
    locked: Option<(u32, V)>,
    valid: Option<(u32, V)>,

    proposals: BTreeMap<u32, V>,
    proposal_valid_rounds: BTreeMap<u32, Option<u32>>,
    prevotes: BTreeMap<u32, BTreeMap<ValidatorId, Option<Digest>>>,
    precommits: BTreeMap<u32, BTreeMap<ValidatorId, Option<Digest>>>,
    known_values: BTreeMap<Digest, V>,
    voted_prevote: BTreeSet<u32>,
    voted_precommit: BTreeSet<u32>,
    buffered: Vec<Message<V>>,

    pub decisions: Vec<DecisionRecord>,
    /// Equivocating (conflicting duplicate) messages observed, first copy
    /// retained.
    pub conflicts: u64,
    /// Malformed or stale messages dropped.
    pub ignored: u64,
    started: bool,
}

impl<V: Payload> ValidatorState<V> {
    pub fn new(
        id: ValidatorId,
        validators: Vec<Validator>,
        timeouts: TimeoutConfig,
    ) -> Result<Self, ConsensusError> {
        timeouts.validate()?;
        let schedule = LeaderSchedule::new(&validators)?;
        if !validators.iter().any(|v| v.id == id) {
            return Err(ConsensusError::UnknownValidator { id });
        }
        Ok(ValidatorState {
            id,
            quorum: quorum_power(&validators),
            timeouts,
            schedule,
            validators,
            height: 0,
            round: 0,
            step: Step::Propose,
            locked: None,
            valid: None,
            proposals: BTreeMap::new(),
            proposal_valid_rounds: BTreeMap::new(),
            prevotes: BTreeMap::new(),
            precommits: BTreeMap::new(),
            known_values: BTreeMap::new(),
            voted_prevote: BTreeSet::new(),
            voted_precommit: BTreeSet::new(),
            buffered: Vec::new(),
            decisions: Vec::new(),
            conflicts: 0,
            ignored: 0,
            started: false,
        })
    }

    pub fn id(&self) -> ValidatorId {
        self.id
    }

    pub fn locked_round(&self) -> Option<u32> {
        self.locked.as_ref().map(|(r, _)| *r)
    }

    pub fn valid_round(&self) -> Option<u32> {
        self.valid.as_ref().map(|(r, _)| *r)
    }

    fn power_of(&self, id: ValidatorId) -> Option<Power> {
        self.validators.iter().find(|v| v.id == id).map(|v| v.power)
    }

    /// The pure deterministic transition. Returns broadcasts, timer
    /// requests and decisions in emission order.
    pub fn handle_event(
        &mut self,
        event: Event<V>,
        env: &mut dyn ProposalEnv<V>,
    ) -> Vec<Output<V>> {
        let mut out = Vec::new();
        match event {
            Event::Start => {
                if !self.started {
                    self.started = true;
                    self.height = 1;
                    self.begin_round(0, env, &mut out);
                }
            }
            Event::Message(msg) => {
                self.ingest(msg, &mut out, env);
            }
            Event::Timeout { height, round, step } => {
                // Only the timer armed for the current position may fire.
                if height == self.height && round == self.round && step == self.step {
                    let next = self.round + 1;
                    self.begin_round(next, env, &mut out);
                }
            }
        }
        out
    }

    fn begin_round(&mut self, round: u32, env: &mut dyn ProposalEnv<V>, out: &mut Vec<Output<V>>) {
        self.round = round;
        self.step = Step::Propose;
        out.push(Output::ScheduleTimeout {
            height: self.height,
            round,
            step: Step::Propose,
            duration_ms: timeout_duration(round, &self.timeouts),
        });
        if self.schedule.leader(self.height, round) == self.id {
            // A proposer that already holds a valid value proposes only that
            // value; otherwise it asks the application for a fresh batch.
            let (value, valid_round) = match &self.valid {
                Some((vr, v)) => (v.clone(), Some(*vr)),
                None => (env.make_batch(self.height, round), None),
            };
            let proposal = Message::Proposal {
                height: self.height,
                round,
                value,
                valid_round,
                sender: self.id,
            };
            out.push(Output::Broadcast(proposal.clone()));
            self.record(proposal);
        }
        self.progress(out, env);
    }

    fn ingest(&mut self, msg: Message<V>, out: &mut Vec<Output<V>>, env: &mut dyn ProposalEnv<V>) {
        if self.power_of(msg.sender()).is_none() {
            self.ignored += 1;
            return;
        }
        match msg.height().cmp(&self.height) {
            std::cmp::Ordering::Less => {
                self.ignored += 1;
            }
            std::cmp::Ordering::Greater => {
                self.buffered.push(msg);
            }
            std::cmp::Ordering::Equal => {
                self.record(msg);
                self.progress(out, env);
            }
        }
    }

    /// Tallies one current-height message. First message wins per sender
    /// and slot; a conflicting duplicate is flagged and dropped.
    fn record(&mut self, msg: Message<V>) {
        match msg {
            Message::Proposal { round, value, valid_round, sender, .. } => {
                if sender != self.schedule.leader(self.height, round) {
                    self.ignored += 1;
                    return;
                }
                if valid_round.is_some_and(|vr| vr >= round) {
                    self.ignored += 1;
                    return;
                }
                match self.proposals.get(&round) {
                    Some(existing) if *existing != value => self.conflicts += 1,
                    Some(_) => {}
                    None => {
                        self.known_values.insert(value.digest(), value.clone());
                        self.proposals.insert(round, value);
                        self.proposal_valid_rounds.insert(round, valid_round);
                    }
                }
            }
            Message::Prevote { round, value, sender, .. } => {
                let slot = self.prevotes.entry(round).or_default();
                match slot.get(&sender) {
                    Some(existing) if *existing != value => self.conflicts += 1,
                    Some(_) => {}
                    None => {
                        slot.insert(sender, value);
                    }
                }
            }
            Message::Precommit { round, value, sender, .. } => {
                let slot = self.precommits.entry(round).or_default();
                match slot.get(&sender) {
                    Some(existing) if *existing != value => self.conflicts += 1,
                    Some(_) => {}
                    None => {
                        slot.insert(sender, value);
                    }
                }
            }
        }
    }

    /// Power behind a specific non-nil vote value in one round.
    fn tally(
        votes: &BTreeMap<u32, BTreeMap<ValidatorId, Option<Digest>>>,
        validators: &[Validator],
        round: u32,
    ) -> BTreeMap<Digest, Power> {
        let mut sums: BTreeMap<Digest, Power> = BTreeMap::new();
        if let Some(slot) = votes.get(&round) {
            for (sender, value) in slot {
                if let Some(d) = value {
                    let power = validators
                        .iter()
                        .find(|v| v.id == *sender)
                        .map(|v| v.power)
                        .unwrap_or(0);
                    *sums.entry(*d).or_default() += power;
                }
            }
        }
        sums
    }

    /// Drives every enabled transition to quiescence: proposal handling,
    /// prevote quorum, precommit quorum (any round), buffered catch-up.
    fn progress(&mut self, out: &mut Vec<Output<V>>, env: &mut dyn ProposalEnv<V>) {
        loop {
            // Propose step: answer the current round's proposal.
            if self.step == Step::Propose && self.proposals.contains_key(&self.round) {
                let value = self.proposals[&self.round].clone();
                let proposal_vr = self.proposal_valid_rounds[&self.round];
                let vote = if env.validate(&value) {
                    match &self.locked {
                        None => Some(value.digest()),
                        Some((_, lv)) if *lv == value => Some(value.digest()),
                        Some((lr, _)) if proposal_vr.is_some_and(|vr| vr > *lr) => {
                            // Unlock: the proposer's valid value is newer
                            // than our lock.
                            Some(value.digest())
                        }
                        // Lock respected: keep prevoting the locked value.
                        Some((_, lv)) => Some(lv.digest()),
                    }
                } else {
                    None
                };
                if self.voted_prevote.insert(self.round) {
                    let msg = Message::Prevote {
                        height: self.height,
                        round: self.round,
                        value: vote,
                        sender: self.id,
                    };
                    out.push(Output::Broadcast(msg.clone()));
                    self.record(msg);
                }
                self.step = Step::Prevote;
                out.push(Output::ScheduleTimeout {
                    height: self.height,
                    round: self.round,
                    step: Step::Prevote,
                    duration_ms: timeout_duration(self.round, &self.timeouts),
                });
                continue;
            }

            // Prevote quorum for a known value: adopt it as valid, lock it,
            // precommit it.
            if self.step == Step::Prevote {
                let sums = Self::tally(&self.prevotes, &self.validators, self.round);
                let quorum_value = sums
                    .into_iter()
                    .find(|(d, p)| *p >= self.quorum && self.known_values.contains_key(d));
                if let Some((digest, _)) = quorum_value {
                    let value = self.known_values[&digest].clone();
                    self.valid = Some((self.round, value.clone()));
                    self.locked = Some((self.round, value));
                    if self.voted_precommit.insert(self.round) {
                        let msg = Message::Precommit {
                            height: self.height,
                            round: self.round,
                            value: Some(digest),
                            sender: self.id,
                        };
                        out.push(Output::Broadcast(msg.clone()));
                        self.record(msg);
                    }
                    self.step = Step::Precommit;
                    out.push(Output::ScheduleTimeout {
                        height: self.height,
                        round: self.round,
                        step: Step::Precommit,
                        duration_ms: timeout_duration(self.round, &self.timeouts),
                    });
                    continue;
                }
            }

            // Precommit quorum at any round of this height decides it.
            let decided = self
                .precommits
                .keys()
                .copied()
                .collect::<Vec<u32>>()
                .into_iter()
                .find_map(|r| {
                    Self::tally(&self.precommits, &self.validators, r)
                        .into_iter()
                        .find(|(d, p)| *p >= self.quorum && self.known_values.contains_key(d))
                        .map(|(d, _)| (r, d))
                });
            if let Some((round, digest)) = decided {
                let value = self.known_values[&digest].clone();
                self.decisions.push(DecisionRecord { height: self.height, round, digest });
                out.push(Output::Decision { height: self.height, round, value });
                self.advance_height(out, env);
                continue;
            }

            break;
        }
    }

    fn advance_height(&mut self, out: &mut Vec<Output<V>>, env: &mut dyn ProposalEnv<V>) {
        self.height += 1;
        self.locked = None;
        self.valid = None;
        self.proposals.clear();
        self.proposal_valid_rounds.clear();
        self.prevotes.clear();
        self.precommits.clear();
        self.known_values.clear();
        self.voted_prevote.clear();
        self.voted_precommit.clear();

        // Replay whatever arrived early for the new height.
        let (now, later): (Vec<Message<V>>, Vec<Message<V>>) = std::mem::take(&mut self.buffered)
            .into_iter()
            .partition(|m| m.height() == self.height);
        self.buffered = later;
        self.begin_round(0, env, out);
        for msg in now {
            self.record(msg);
        }
        // Callers loop progress() after us.
    }
}

/// No two decision logs disagree on the value decided at any height.
pub fn decision_consistency(traces: &[Vec<DecisionRecord>]) -> bool {
    let mut decided: BTreeMap<u64, Digest> = BTreeMap::new();
    for trace in traces {
        for d in trace {
            match decided.get(&d.height) {
                Some(existing) if *existing != d.digest => return false,
                Some(_) => {}
                None => {
                    decided.insert(d.height, d.digest);
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{TimeoutConfig, Validator};

    #[derive(Debug, Clone, PartialEq, Eq)]
    struct Batch(u64);

    impl Payload for Batch {
        fn digest(&self) -> Digest {
            let mut d = [0u8; 32];
            d[..8].copy_from_slice(&self.0.to_be_bytes());
            d
        }
    }

    /// Hands each proposer a batch numbered by (height, round).
    struct Seq;

    impl ProposalEnv<Batch> for Seq {
        fn make_batch(&mut self, height: u64, round: u32) -> Batch {
            Batch(height * 100 + round as u64)
        }
    }

    fn cfg() -> TimeoutConfig {
        TimeoutConfig { base_ms: 1000, delta_ms: 200 }
    }

    fn equal(n: u32) -> Vec<Validator> {
        (0..n).map(|id| Validator { id, power: 1 }).collect()
    }

    fn machines(n: u32) -> Vec<ValidatorState<Batch>> {
        (0..n)
            .map(|id| ValidatorState::new(id, equal(n), cfg()).unwrap())
            .collect()
    }

    /// Synchronous lockstep network: instant reliable delivery to every
    /// other validator, FIFO order; optional silent set and a capped number
    /// of simulated timeout sweeps for stalled steps.
    fn run_lockstep(
        machines: &mut [ValidatorState<Batch>],
        silent: &[ValidatorId],
        heights: u64,
        max_sweeps: usize,
    ) -> Vec<Output<Batch>> {
        let mut log = Vec::new();
        let mut queue: Vec<(ValidatorId, Message<Batch>)> = Vec::new();
        let mut env = Seq;
        let n = machines.len() as u32;
        for m in machines.iter_mut() {
            let outs = m.handle_event(Event::Start, &mut env);
            for o in &outs {
                if let Output::Broadcast(msg) = o {
                    if !silent.contains(&m.id()) {
                        for dst in 0..n {
                            if dst != msg.sender() {
                                queue.push((dst, msg.clone()));
                            }
                        }
                    }
                }
            }
            log.extend(outs);
        }
        let mut sweeps = 0;
        loop {
            while let Some((dst, msg)) = queue.first().cloned() {
                queue.remove(0);
                let outs = machines[dst as usize].handle_event(Event::Message(msg), &mut env);
                for o in &outs {
                    if let Output::Broadcast(m) = o {
                        if !silent.contains(&m.sender()) {
                            for d in 0..machines.len() as u32 {
                                if d != m.sender() {
                                    queue.push((d, m.clone()));
                                }
                            }
                        }
                    }
                }
                log.extend(outs);
            }
            if machines.iter().all(|m| m.decisions.len() as u64 >= heights) || sweeps >= max_sweeps {
                break;
            }
            // Everyone is stalled: fire each machine's current timer once.
            sweeps += 1;
            for i in 0..machines.len() {
                let (h, r, s) = (machines[i].height, machines[i].round, machines[i].step);
                let outs =
                    machines[i].handle_event(Event::Timeout { height: h, round: r, step: s }, &mut env);
                for o in &outs {
                    if let Output::Broadcast(m) = o {
                        if !silent.contains(&m.sender()) {
                            for d in 0..machines.len() as u32 {
                                if d != m.sender() {
                                    queue.push((d, m.clone()));
                                }
                            }
                        }
                    }
                }
                log.extend(outs);
            }
        }
        log
    }

    #[test]
    fn four_honest_validators_decide_round_zero() {
        // Reference trace: v0 proposes Batch(100) at height 1, everyone
        // prevotes it, precommits it, and decides it in round 0.
        let mut ms = machines(4);
        run_lockstep(&mut ms, &[], 1, 0);
        for m in &ms {
            assert_eq!(m.decisions.len(), 1, "validator {} decided", m.id());
            assert_eq!(m.decisions[0].height, 1);
            assert_eq!(m.decisions[0].round, 0);
            assert_eq!(m.decisions[0].digest, Batch(100).digest());
            assert_eq!(m.conflicts, 0);
        }
        assert!(decision_consistency(&ms.iter().map(|m| m.decisions.clone()).collect::<Vec<_>>()));
    }

    #[test]
    fn chain_advances_across_heights_with_rotating_proposers() {
        let mut ms = machines(4);
        run_lockstep(&mut ms, &[], 3, 0);
        for m in &ms {
            let digests: Vec<Digest> = m.decisions.iter().map(|d| d.digest).collect();
            // Heights 1,2,3 proposed by v0,v1,v2 in round 0.
            assert_eq!(
                digests,
                vec![Batch(100).digest(), Batch(200).digest(), Batch(300).digest()]
            );
        }
    }

    #[test]
    fn silent_proposer_forces_round_one() {
        let mut ms = machines(4);
        run_lockstep(&mut ms, &[0], 1, 4);
        for m in &ms[1..] {
            assert_eq!(m.decisions.len(), 1, "validator {} decided", m.id());
            assert_eq!(m.decisions[0].round, 1);
            // Height 1 round 1 is proposed by v1.
            assert_eq!(m.decisions[0].digest, Batch(101).digest());
        }
    }

    #[test]
    fn lock_is_respected_against_plain_reproposals() {
        // Validator 3's view of height 1, scripted by hand.
        let mut env = Seq;
        let mut v3 = ValidatorState::new(3, equal(4), cfg()).unwrap();
        v3.handle_event(Event::Start, &mut env);

        let a = Batch(100);
        let w = Batch(999);
        let proposal = |round: u32, value: &Batch, vr: Option<u32>, sender: u32| {
            Event::Message(Message::Proposal {
                height: 1,
                round,
                value: value.clone(),
                valid_round: vr,
                sender,
            })
        };
        let prevote = |round: u32, value: &Batch, sender: u32| {
            Event::Message(Message::Prevote {
                height: 1,
                round,
                value: Some(value.digest()),
                sender,
            })
        };

        // Round 0: proposal A, quorum of prevotes, so v3 locks A.
        let out = v3.handle_event(proposal(0, &a, None, 0), &mut env);
        assert!(out.iter().any(|o| matches!(o,
            Output::Broadcast(Message::Prevote { value: Some(d), .. }) if *d == a.digest())));
        v3.handle_event(prevote(0, &a, 0), &mut env);
        let out = v3.handle_event(prevote(0, &a, 1), &mut env);
        assert!(out.iter().any(|o| matches!(o,
            Output::Broadcast(Message::Precommit { value: Some(d), .. }) if *d == a.digest())));
        assert_eq!(v3.locked_round(), Some(0));

        // No precommit quorum arrives; precommit timeout moves to round 1.
        let out = v3.handle_event(
            Event::Timeout { height: 1, round: 0, step: Step::Precommit },
            &mut env,
        );
        assert!(out
            .iter()
            .any(|o| matches!(o, Output::ScheduleTimeout { round: 1, duration_ms: 1200, .. })));

        // Round 1: proposal of w without a valid round. Lock respected:
        // v3 prevotes its locked value, not w.
        let out = v3.handle_event(proposal(1, &w, None, 1), &mut env);
        assert!(out.iter().any(|o| matches!(o,
            Output::Broadcast(Message::Prevote { round: 1, value: Some(d), .. }) if *d == a.digest())));

        // Round 2: proposal of w carrying valid_round 1 > locked round 0
        // unlocks and wins the prevote.
        v3.handle_event(Event::Timeout { height: 1, round: 1, step: Step::Prevote }, &mut env);
        let out = v3.handle_event(proposal(2, &w, Some(1), 2), &mut env);
        assert!(out.iter().any(|o| matches!(o,
            Output::Broadcast(Message::Prevote { round: 2, value: Some(d), .. }) if *d == w.digest())));
    }

    #[test]
    fn equivocating_votes_keep_first_and_flag_conflict() {
        let mut env = Seq;
        let mut v3 = ValidatorState::new(3, equal(4), cfg()).unwrap();
        v3.handle_event(Event::Start, &mut env);
        let a = Batch(100);
        let b = Batch(200);
        let vote = |value: &Batch| {
            Event::Message(Message::Prevote { height: 1, round: 0, value: Some(value.digest()), sender: 1 })
        };
        v3.handle_event(vote(&a), &mut env);
        v3.handle_event(vote(&b), &mut env);
        assert_eq!(v3.conflicts, 1);
        v3.handle_event(vote(&a), &mut env); // plain duplicate: no conflict
        assert_eq!(v3.conflicts, 1);
    }

    #[test]
    fn malformed_messages_are_counted_and_dropped() {
        let mut env = Seq;
        let mut v3 = ValidatorState::new(3, equal(4), cfg()).unwrap();
        v3.handle_event(Event::Start, &mut env);
        // Unknown sender.
        v3.handle_event(
            Event::Message(Message::Prevote { height: 1, round: 0, value: None, sender: 77 }),
            &mut env,
        );
        // Proposal from a non-proposer.
        v3.handle_event(
            Event::Message(Message::Proposal {
                height: 1,
                round: 0,
                value: Batch(5),
                valid_round: None,
                sender: 2,
            }),
            &mut env,
        );
        assert_eq!(v3.ignored, 2);
        assert_eq!(v3.decisions.len(), 0);
    }

    #[test]
    fn transitions_are_deterministic() {
        let run = || {
            let mut ms = machines(4);
            let log = run_lockstep(&mut ms, &[0], 2, 6);
            let debug: Vec<String> = log.iter().map(|o| format!("{o:?}")).collect();
            (debug, ms.iter().map(|m| m.decisions.clone()).collect::<Vec<_>>())
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn locked_round_never_decreases_within_a_height() {
        let mut ms = machines(4);
        run_lockstep(&mut ms, &[], 2, 2);
        // Exercised more heavily by the simulator sweeps; here just assert
        // the accessor reports a sane reset state after height advance.
        for m in &ms {
            assert!(m.locked_round().is_none() || m.locked_round().unwrap() <= m.round);
        }
    }

    #[test]
    fn injected_conflicting_logs_are_detected() {
        let a = vec![DecisionRecord { height: 1, round: 0, digest: [1; 32] }];
        let b = vec![DecisionRecord { height: 1, round: 0, digest: [2; 32] }];
        assert!(decision_consistency(&[a.clone(), a.clone()]));
        assert!(!decision_consistency(&[a, b]));
    }
}
