//! Merkle roots and inclusion proofs over canonical transaction bytes.
//!
//! An odd node at any level is paired with itself; the empty transaction
//! list hashes to SHA-256 of the empty string. Both choices are part of the
//! documented bit-exact format.

use sha2::{Digest as _, Sha256};

use crate::{ChainTx, Digest, LedgerError};

pub fn leaf_hash<T: ChainTx>(tx: &T) -> Digest {
    let mut h = Sha256::new();
    h.update(tx.canonical_bytes());
    h.finalize().into()
}

fn node_hash(left: &Digest, right: &Digest) -> Digest {
    let mut h = Sha256::new();
    h.update(left);
    h.update(right);
    h.finalize().into()
}

pub fn merkle_root_of_leaves(leaves: &[Digest]) -> Digest {
    if leaves.is_empty() {
        return Sha256::digest([]).into();
    }
    let mut level = leaves.to_vec();
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        for pair in level.chunks(2) {
            let right = pair.get(1).unwrap_or(&pair[0]);
            next.push(node_hash(&pair[0], right));
        }
        level = next;
    }
    level[0]
}

pub fn merkle_root<T: ChainTx>(txs: &[T]) -> Digest {
    let leaves: Vec<Digest> = txs.iter().map(leaf_hash).collect();
    merkle_root_of_leaves(&leaves)
}

/// Sibling path from a leaf to the root; a self-paired odd node records
/// itself as its sibling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionProof {
    pub index: usize,
    pub path: Vec<Digest>,
}

pub fn merkle_proof<T: ChainTx>(txs: &[T], index: usize) -> Result<InclusionProof, LedgerError> {
    if index >= txs.len() {
        return Err(LedgerError::ProofIndexOutOfRange { index, len: txs.len() });
    }
    let mut level: Vec<Digest> = txs.iter().map(leaf_hash).collect();
    let mut path = Vec::new();
    let mut idx = index;
    while level.len() > 1 {
        let sibling = if idx % 2 == 0 {
            *level.get(idx + 1).unwrap_or(&level[idx])
        } else {
            level[idx - 1]
        };
        path.push(sibling);
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        for pair in level.chunks(2) {
            let right = pair.get(1).unwrap_or(&pair[0]);
            next.push(node_hash(&pair[0], right));
        }
        level = next;
        idx /= 2;
    }
    Ok(InclusionProof { index, path })
}

pub fn verify_proof<T: ChainTx>(root: &Digest, tx: &T, proof: &InclusionProof) -> bool {
    let mut cur = leaf_hash(tx);
    let mut idx = proof.index;
    for sibling in &proof.path {
        cur = if idx % 2 == 0 {
            node_hash(&cur, sibling)
        } else {
            node_hash(sibling, &cur)
        };
        idx /= 2;
    }
    &cur == root
}

#[cfg(test)]
mod tests {
    use super::*;
    use sha2::Sha256;

    #[derive(Clone)]
    struct Blob(u64, Vec<u8>);

    impl ChainTx for Blob {
        fn canonical_bytes(&self) -> Vec<u8> {
            self.1.clone()
        }
        fn tx_id(&self) -> u64 {
            self.0
        }
    }

    fn blobs(n: usize) -> Vec<Blob> {
        (0..n).map(|i| Blob(i as u64, format!("tx-{i}").into_bytes())).collect()
    }

    #[test]
    fn empty_list_hashes_the_empty_string() {
        let expected: Digest = Sha256::digest([]).into();
        assert_eq!(merkle_root::<Blob>(&[]), expected);
    }

    #[test]
    fn single_tx_root_is_its_leaf_hash() {
        let txs = blobs(1);
        assert_eq!(merkle_root(&txs), leaf_hash(&txs[0]));
    }

    #[test]
    fn any_byte_flip_changes_the_root() {
        let txs = blobs(4);
        let root = merkle_root(&txs);
        let mut tampered = txs.clone();
        tampered[2].1[0] ^= 1;
        assert_ne!(merkle_root(&tampered), root);
    }

    #[test]
    fn proofs_verify_and_swapped_siblings_fail_for_all_small_trees() {
        // Exhaustive over leaf counts 1..=16.
        for n in 1..=16usize {
            let txs = blobs(n);
            let root = merkle_root(&txs);
            for i in 0..n {
                let proof = merkle_proof(&txs, i).unwrap();
                assert!(verify_proof(&root, &txs[i], &proof), "n={n} i={i}");
                // Swapping any two distinct path siblings must break the
                // proof, as must corrupting one.
                if proof.path.len() >= 2 {
                    let mut bad = proof.clone();
                    bad.path.swap(0, proof.path.len() - 1);
                    if bad.path != proof.path {
                        assert!(!verify_proof(&root, &txs[i], &bad), "n={n} i={i} swap");
                    }
                }
                let mut corrupt = proof.clone();
                if !corrupt.path.is_empty() {
                    corrupt.path[0][0] ^= 0xff;
                    assert!(!verify_proof(&root, &txs[i], &corrupt), "n={n} i={i} corrupt");
                }
                // A proof against the wrong leaf fails.
                if n > 1 {
                    let other = (i + 1) % n;
                    assert!(!verify_proof(&root, &txs[other], &proof), "n={n} i={i} wrong leaf");
                }
            }
        }
    }

    #[test]
    fn out_of_range_index_errors() {
        let txs = blobs(3);
        assert!(matches!(
            merkle_proof(&txs, 3),
            Err(LedgerError::ProofIndexOutOfRange { .. })
        ));
    }
}
