//! Hash-pointer block chains. Each block hash commits to the previous hash,
//! the Merkle root of the block's transactions, and the block header data
//! (timestamp and proposer).

use std::collections::BTreeMap;

use sha2::{Digest as _, Sha256};

use crate::merkle::merkle_root;
use crate::tx::LedgerTx;
use crate::{ChainTx, Digest, LedgerError};

pub const GENESIS_PREV_HASH: Digest = [0u8; 32];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMeta {
    pub timestamp: u64,
    pub proposer: String,
}

impl BlockMeta {
    fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&8u32.to_be_bytes());
        out.extend_from_slice(&self.timestamp.to_be_bytes());
        out.extend_from_slice(&(self.proposer.len() as u32).to_be_bytes());
        out.extend_from_slice(self.proposer.as_bytes());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block<T> {
    pub height: u64,
    pub prev_hash: Digest,
    pub merkle_root: Digest,
    pub meta: BlockMeta,
    pub txs: Vec<T>,
    pub block_hash: Digest,
}

pub fn block_hash(prev: &Digest, root: &Digest, meta: &BlockMeta) -> Digest {
    let mut h = Sha256::new();
    h.update(prev);
    h.update(root);
    h.update(meta.canonical_bytes());
    h.finalize().into()
}

/// An append-only side chain starting from a fixed genesis block.
#[derive(Debug, Clone)]
pub struct SideChain<T> {
    pub id: String,
    blocks: Vec<Block<T>>,
}

impl<T: ChainTx> SideChain<T> {
    pub fn new(id: impl Into<String>) -> Self {
        let meta = BlockMeta { timestamp: 0, proposer: "genesis".into() };
        let root = merkle_root::<T>(&[]);
        let genesis = Block {
            height: 0,
            prev_hash: GENESIS_PREV_HASH,
            merkle_root: root,
            block_hash: block_hash(&GENESIS_PREV_HASH, &root, &meta),
            meta,
            txs: Vec::new(),
        };
        SideChain { id: id.into(), blocks: vec![genesis] }
    }

    /// Reassembles a chain from raw blocks (import path). No verification
    /// happens here; run [`SideChain::verify`] on the result.
    pub fn from_blocks(id: impl Into<String>, blocks: Vec<Block<T>>) -> Self {
        SideChain { id: id.into(), blocks }
    }

    pub fn blocks(&self) -> &[Block<T>] {
        &self.blocks
    }

    pub fn tip(&self) -> &Block<T> {
        self.blocks.last().expect("chains always hold genesis")
    }

    pub fn height(&self) -> u64 {
        self.tip().height
    }

    pub fn append_block(&mut self, txs: Vec<T>, meta: BlockMeta) -> Result<&Block<T>, LedgerError> {
        let tip = self.tip();
        if meta.timestamp < tip.meta.timestamp {
            return Err(LedgerError::TimestampRegression {
                height: tip.height + 1,
                previous: tip.meta.timestamp,
                proposed: meta.timestamp,
            });
        }
        let root = merkle_root(&txs);
        let block = Block {
            height: tip.height + 1,
            prev_hash: tip.block_hash,
            merkle_root: root,
            block_hash: block_hash(&tip.block_hash, &root, &meta),
            meta,
            txs,
        };
        self.blocks.push(block);
        Ok(self.blocks.last().unwrap())
    }

    /// Recomputes every hash pointer, Merkle root, block hash, height and
    /// timestamp relation; true only if the whole chain is intact.
    pub fn verify(&self) -> bool {
        let mut prev_hash = GENESIS_PREV_HASH;
        let mut prev_time = 0u64;
        for (i, b) in self.blocks.iter().enumerate() {
            if b.height != i as u64 || b.prev_hash != prev_hash {
                return false;
            }
            if i > 0 && b.meta.timestamp < prev_time {
                return false;
            }
            if b.merkle_root != merkle_root(&b.txs) {
                return false;
            }
            if b.block_hash != block_hash(&b.prev_hash, &b.merkle_root, &b.meta) {
                return false;
            }
            prev_hash = b.block_hash;
            prev_time = b.meta.timestamp;
        }
        !self.blocks.is_empty()
    }

    pub fn txs(&self) -> impl Iterator<Item = &T> {
        self.blocks.iter().flat_map(|b| b.txs.iter())
    }

    /// The block containing the transaction with the given id.
    pub fn block_of_tx(&self, tx_id: u64) -> Option<&Block<T>> {
        self.blocks
            .iter()
            .find(|b| b.txs.iter().any(|t| t.tx_id() == tx_id))
    }
}

/// The agreements in force just before global position `upto_seq`: replay
/// every deployment and revocation with a strictly smaller sequence number,
/// later events overriding earlier ones for the same agreement hash.
pub fn agreements_in_force(chain: &SideChain<LedgerTx>, upto_seq: u64) -> Vec<Digest> {
    let mut state: BTreeMap<Digest, bool> = BTreeMap::new();
    for tx in chain.txs() {
        if tx.seq() >= upto_seq {
            continue;
        }
        match tx {
            LedgerTx::Esad { tx, .. } => {
                state.insert(tx.esa_hash, true);
            }
            LedgerTx::Esar { tx, .. } => {
                state.insert(tx.esa_hash, false);
            }
            LedgerTx::Data { .. } => {}
        }
    }
    state.into_iter().filter(|(_, valid)| *valid).map(|(h, _)| h).collect()
}
