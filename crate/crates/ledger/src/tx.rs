//! The three ledger event types and their canonical byte encoding.
//!
//! Only addresses, hashes, flags, timestamps and sequence numbers ever reach
//! the ledger: agreement bodies and query texts stay off-chain and are
//! referenced by digest.

use crate::{ChainTx, Digest};

/// Opaque party address (a pseudonymous token, never a display name).
pub type Address = String;

/// Deployment of a sharing agreement: hash of the agreement code plus the
/// parties, stamped valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsadTx {
    pub owner: Address,
    pub provider: Address,
    pub esa_hash: Digest,
    pub deployed_at: u64,
    pub validity: bool,
}

/// A data access: the hash of the exact stored query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataTx {
    pub provider: Address,
    pub requester: Address,
    pub query_hash: Digest,
    pub time: u64,
}

/// Revocation: references the deployed agreement's hash with validity false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsarTx {
    pub esa_hash: Digest,
    pub validity: bool,
    pub time: u64,
}

/// A ledger transaction with its chain-wide monotone sequence number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LedgerTx {
    Esad { seq: u64, tx: EsadTx },
    Data { seq: u64, tx: DataTx },
    Esar { seq: u64, tx: EsarTx },
}

impl LedgerTx {
    pub fn seq(&self) -> u64 {
        match self {
            LedgerTx::Esad { seq, .. } | LedgerTx::Data { seq, .. } | LedgerTx::Esar { seq, .. } => {
                *seq
            }
        }
    }

    pub fn time(&self) -> u64 {
        match self {
            LedgerTx::Esad { tx, .. } => tx.deployed_at,
            LedgerTx::Data { tx, .. } => tx.time,
            LedgerTx::Esar { tx, .. } => tx.time,
        }
    }

    pub fn esad(seq: u64, owner: Address, provider: Address, esa_hash: Digest, at: u64) -> Self {
        LedgerTx::Esad {
            seq,
            tx: EsadTx { owner, provider, esa_hash, deployed_at: at, validity: true },
        }
    }

    pub fn data(seq: u64, provider: Address, requester: Address, query_hash: Digest, time: u64) -> Self {
        LedgerTx::Data { seq, tx: DataTx { provider, requester, query_hash, time } }
    }

    pub fn esar(seq: u64, esa_hash: Digest, time: u64) -> Self {
        LedgerTx::Esar { seq, tx: EsarTx { esa_hash, validity: false, time } }
    }
}

fn push_field(out: &mut Vec<u8>, bytes: &[u8]) {
    out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
    out.extend_from_slice(bytes);
}

impl ChainTx for LedgerTx {
    /// Length-prefixed field concatenation in declaration order, preceded by
    /// a one-byte variant tag and the sequence number.
    fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        match self {
            LedgerTx::Esad { seq, tx } => {
                out.push(1);
                push_field(&mut out, &seq.to_be_bytes());
                push_field(&mut out, tx.owner.as_bytes());
                push_field(&mut out, tx.provider.as_bytes());
                push_field(&mut out, &tx.esa_hash);
                push_field(&mut out, &tx.deployed_at.to_be_bytes());
                push_field(&mut out, &[tx.validity as u8]);
            }
            LedgerTx::Data { seq, tx } => {
                out.push(2);
                push_field(&mut out, &seq.to_be_bytes());
                push_field(&mut out, tx.provider.as_bytes());
                push_field(&mut out, tx.requester.as_bytes());
                push_field(&mut out, &tx.query_hash);
                push_field(&mut out, &tx.time.to_be_bytes());
            }
            LedgerTx::Esar { seq, tx } => {
                out.push(3);
                push_field(&mut out, &seq.to_be_bytes());
                push_field(&mut out, &tx.esa_hash);
                push_field(&mut out, &[tx.validity as u8]);
                push_field(&mut out, &tx.time.to_be_bytes());
            }
        }
        out
    }

    fn tx_id(&self) -> u64 {
        self.seq()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn revocations_carry_validity_false() {
        let tx = LedgerTx::esar(4, [7u8; 32], 10);
        match tx {
            LedgerTx::Esar { tx, .. } => assert!(!tx.validity),
            _ => unreachable!(),
        }
    }

    #[test]
    fn canonical_bytes_distinguish_every_field() {
        let a = LedgerTx::data(1, "p".into(), "r".into(), [0u8; 32], 5);
        let variants = [
            LedgerTx::data(2, "p".into(), "r".into(), [0u8; 32], 5),
            LedgerTx::data(1, "q".into(), "r".into(), [0u8; 32], 5),
            LedgerTx::data(1, "p".into(), "s".into(), [0u8; 32], 5),
            LedgerTx::data(1, "p".into(), "r".into(), [1u8; 32], 5),
            LedgerTx::data(1, "p".into(), "r".into(), [0u8; 32], 6),
        ];
        for v in variants {
            assert_ne!(a.canonical_bytes(), v.canonical_bytes());
        }
    }

    #[test]
    fn length_prefixing_prevents_field_sliding() {
        let a = LedgerTx::data(1, "ab".into(), "c".into(), [0u8; 32], 5);
        let b = LedgerTx::data(1, "a".into(), "bc".into(), [0u8; 32], 5);
        assert_ne!(a.canonical_bytes(), b.canonical_bytes());
    }
}
