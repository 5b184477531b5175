//! Append-only ledger structures: Merkle trees with inclusion proofs,
//! hash-pointer block chains, the agreement/data/revocation transaction
//! types, and periodic anchoring of side-chain roots onto a simulated base
//! chain.
//!
//! Hashing is SHA-256 throughout. Chains are single-writer append-only;
//! snapshots are plain immutable borrows.

mod anchor;
mod chain;
mod export;
mod merkle;
mod tx;

pub use anchor::{interchain_latency, AnchorRecord, BaseChain, InterchainLatency};
pub use chain::{agreements_in_force, block_hash, Block, BlockMeta, SideChain, GENESIS_PREV_HASH};
pub use export::{export_base_chain, export_side_chain, import_base_chain, import_side_chain};
pub use merkle::{leaf_hash, merkle_proof, merkle_root, merkle_root_of_leaves, verify_proof, InclusionProof};
pub use tx::{Address, DataTx, EsadTx, EsarTx, LedgerTx};

use thiserror::Error;

/// 32-byte SHA-256 digest.
pub type Digest = [u8; 32];

/// Anything a chain can carry: hashable canonical bytes plus a chain-unique
/// transaction id (the sequence number for ledger transactions).
pub trait ChainTx {
    fn canonical_bytes(&self) -> Vec<u8>;
    fn tx_id(&self) -> u64;
}

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("proof index {index} out of range for {len} transactions")]
    ProofIndexOutOfRange { index: usize, len: usize },
    #[error("block {height}: timestamp {proposed} regresses before {previous}")]
    TimestampRegression { height: u64, previous: u64, proposed: u64 },
    #[error("transaction {tx_id} not found on the side chain")]
    TxNotFound { tx_id: u64 },
    #[error("export line {line}: {reason}")]
    BadExport { line: usize, reason: String },
}
