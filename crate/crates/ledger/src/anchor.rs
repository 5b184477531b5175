//! Anchoring side-chain Merkle roots onto a simulated base chain.
//!
//! The base chain stands in for a slow public ledger: a trusted append-only
//! anchor log with a configurable commit delay. Each anchor commits one side
//! block's root; anchors for a side chain appear in strictly increasing
//! side-height order.

use crate::chain::SideChain;
use crate::{ChainTx, Digest, LedgerError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorRecord {
    pub side_chain_id: String,
    pub side_height: u64,
    pub root: Digest,
    pub base_time: u64,
}

#[derive(Debug, Clone)]
pub struct BaseChain {
    /// Simulated time between submitting an anchor and its commitment.
    pub commit_delay: u64,
    records: Vec<AnchorRecord>,
}

impl BaseChain {
    pub fn new(commit_delay: u64) -> Self {
        BaseChain { commit_delay, records: Vec::new() }
    }

    pub fn from_records(commit_delay: u64, records: Vec<AnchorRecord>) -> Self {
        BaseChain { commit_delay, records }
    }

    pub fn records(&self) -> &[AnchorRecord] {
        &self.records
    }

    fn last_anchored_height(&self, side_id: &str) -> Option<u64> {
        self.records
            .iter()
            .filter(|r| r.side_chain_id == side_id)
            .map(|r| r.side_height)
            .max()
    }

    /// Anchors every not-yet-anchored side block (genesis included), each
    /// stamped with `now + commit_delay`. Nothing to anchor is a no-op.
    pub fn anchor<T: ChainTx>(&mut self, side: &SideChain<T>, now: u64) -> &[AnchorRecord] {
        let from = self.records.len();
        let next_height = self.last_anchored_height(&side.id).map(|h| h + 1).unwrap_or(0);
        for block in side.blocks().iter().filter(|b| b.height >= next_height) {
            self.records.push(AnchorRecord {
                side_chain_id: side.id.clone(),
                side_height: block.height,
                root: block.merkle_root,
                base_time: now + self.commit_delay,
            });
        }
        &self.records[from..]
    }

    /// True iff this base chain's anchors for `side` are complete rooted
    /// copies: strictly increasing heights with no gaps, matching roots, and
    /// nondecreasing base times.
    pub fn verify_anchors<T: ChainTx>(&self, side: &SideChain<T>) -> bool {
        let mut expected_height = 0u64;
        let mut prev_time = 0u64;
        for rec in self.records.iter().filter(|r| r.side_chain_id == side.id) {
            if rec.side_height != expected_height || rec.base_time < prev_time {
                return false;
            }
            match side.blocks().get(rec.side_height as usize) {
                Some(block) if block.merkle_root == rec.root => {}
                _ => return false,
            }
            expected_height += 1;
            prev_time = rec.base_time;
        }
        true
    }

    /// True when every side block root appears exactly once.
    pub fn anchors_complete<T: ChainTx>(&self, side: &SideChain<T>) -> bool {
        let count = self.records.iter().filter(|r| r.side_chain_id == side.id).count() as u64;
        self.verify_anchors(side) && count == side.height() + 1
    }
}

/// Inter-chain consistency latency of one transaction: base anchor time
/// minus side commit time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterchainLatency {
    Anchored(u64),
    /// Committed on the side chain but its block root not yet on the base
    /// chain.
    Pending,
}

pub fn interchain_latency<T: ChainTx>(
    tx_id: u64,
    side: &SideChain<T>,
    base: &BaseChain,
) -> Result<InterchainLatency, LedgerError> {
    let block = side
        .block_of_tx(tx_id)
        .ok_or(LedgerError::TxNotFound { tx_id })?;
    let anchor = base
        .records()
        .iter()
        .find(|r| r.side_chain_id == side.id && r.side_height == block.height);
    Ok(match anchor {
        Some(rec) => InterchainLatency::Anchored(rec.base_time.saturating_sub(block.meta.timestamp)),
        None => InterchainLatency::Pending,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::BlockMeta;
    use crate::tx::LedgerTx;

    fn tx(seq: u64) -> LedgerTx {
        LedgerTx::data(seq, "p".into(), "r".into(), [seq as u8; 32], seq)
    }

    fn meta(t: u64) -> BlockMeta {
        BlockMeta { timestamp: t, proposer: "v0".into() }
    }

    #[test]
    fn one_new_block_yields_one_anchor() {
        let mut side = SideChain::new("s");
        let mut base = BaseChain::new(15);
        base.anchor(&side, 0); // genesis
        side.append_block(vec![tx(0)], meta(10)).unwrap();
        let new = base.anchor(&side, 20).to_vec();
        assert_eq!(new.len(), 1);
        assert_eq!(new[0].side_height, 1);
        assert_eq!(new[0].root, side.tip().merkle_root);
        assert_eq!(new[0].base_time, 35);
        assert!(base.verify_anchors(&side));
        assert!(base.anchors_complete(&side));
    }

    #[test]
    fn anchoring_twice_is_a_noop() {
        let mut side = SideChain::new("s");
        let mut base = BaseChain::new(15);
        side.append_block(vec![tx(0)], meta(1)).unwrap();
        assert_eq!(base.anchor(&side, 5).len(), 2); // genesis + block 1
        assert!(base.anchor(&side, 6).is_empty());
    }

    #[test]
    fn interleaved_appends_keep_height_order() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut side = SideChain::new("s");
        let mut base = BaseChain::new(15);
        let mut now = 0u64;
        let mut seq = 0u64;
        for _ in 0..50 {
            now += 1;
            if rng.gen_bool(0.6) {
                side.append_block(vec![tx(seq)], meta(now)).unwrap();
                seq += 1;
            } else {
                base.anchor(&side, now);
            }
        }
        base.anchor(&side, now + 1);
        assert!(base.verify_anchors(&side));
        assert!(base.anchors_complete(&side));
        let heights: Vec<u64> = base.records().iter().map(|r| r.side_height).collect();
        assert!(heights.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn latency_is_anchor_time_minus_commit_time() {
        let mut side = SideChain::new("s");
        let mut base = BaseChain::new(15);
        side.append_block(vec![tx(7)], meta(10)).unwrap();
        // Commit at t=10, anchored at t=55+15=70: latency 60.
        base.anchor(&side, 55);
        assert_eq!(
            interchain_latency(7, &side, &base).unwrap(),
            InterchainLatency::Anchored(60)
        );
    }

    #[test]
    fn unanchored_tx_is_pending() {
        let mut side = SideChain::new("s");
        let base = BaseChain::new(15);
        side.append_block(vec![tx(7)], meta(10)).unwrap();
        assert_eq!(
            interchain_latency(7, &side, &base).unwrap(),
            InterchainLatency::Pending
        );
        assert!(matches!(
            interchain_latency(99, &side, &base),
            Err(LedgerError::TxNotFound { .. })
        ));
    }

    #[test]
    fn anchor_interval_bounds_latency() {
        // Anchoring every 60 ticks with a 15-tick delay: every latency is at
        // most 60 + 15.
        let mut side = SideChain::new("s");
        let mut base = BaseChain::new(15);
        let mut seq = 0u64;
        for t in 1..=300u64 {
            if t % 5 == 0 {
                side.append_block(vec![tx(seq)], meta(t)).unwrap();
                seq += 1;
            }
            if t % 60 == 0 {
                base.anchor(&side, t);
            }
        }
        base.anchor(&side, 300);
        for id in 0..seq {
            match interchain_latency(id, &side, &base).unwrap() {
                InterchainLatency::Anchored(l) => assert!(l <= 75, "latency {l} exceeds bound"),
                InterchainLatency::Pending => panic!("all txs anchored"),
            }
        }
    }
}
