//! Line-delimited chain export. The format is strict on purpose: any byte
//! that survives parsing is covered by a hash or sequencing check, so a
//! mutated export either fails to parse or fails verification.

use crate::anchor::{AnchorRecord, BaseChain};
use crate::chain::{Block, BlockMeta, SideChain};
use crate::tx::LedgerTx;
use crate::{Digest, LedgerError};

fn bad(line: usize, reason: impl Into<String>) -> LedgerError {
    LedgerError::BadExport { line, reason: reason.into() }
}

fn check_token(line: usize, s: &str) -> Result<(), LedgerError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_') {
        return Err(bad(line, format!("invalid token `{s}`")));
    }
    Ok(())
}

fn parse_u64(line: usize, s: &str) -> Result<u64, LedgerError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0'))
    {
        return Err(bad(line, format!("invalid number `{s}`")));
    }
    s.parse().map_err(|_| bad(line, format!("number `{s}` out of range")))
}

fn parse_digest(line: usize, s: &str) -> Result<Digest, LedgerError> {
    if s.len() != 64 || !s.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)) {
        return Err(bad(line, format!("invalid digest `{s}`")));
    }
    let bytes = hex::decode(s).map_err(|e| bad(line, e.to_string()))?;
    Ok(bytes.try_into().expect("length checked"))
}

pub fn export_side_chain(chain: &SideChain<LedgerTx>) -> Result<String, LedgerError> {
    check_token(0, &chain.id)?;
    let mut out = format!("chain {}\n", chain.id);
    for b in chain.blocks() {
        check_token(0, &b.meta.proposer)?;
        out.push_str(&format!(
            "block {} {} {} {} {} {}\n",
            b.height,
            hex::encode(b.prev_hash),
            hex::encode(b.merkle_root),
            hex::encode(b.block_hash),
            b.meta.timestamp,
            b.meta.proposer,
        ));
        for tx in &b.txs {
            match tx {
                LedgerTx::Esad { seq, tx } => {
                    check_token(0, &tx.owner)?;
                    check_token(0, &tx.provider)?;
                    out.push_str(&format!(
                        "tx esad {seq} {} {} {} {}\n",
                        tx.owner,
                        tx.provider,
                        hex::encode(tx.esa_hash),
                        tx.deployed_at,
                    ));
                }
                LedgerTx::Data { seq, tx } => {
                    check_token(0, &tx.provider)?;
                    check_token(0, &tx.requester)?;
                    out.push_str(&format!(
                        "tx data {seq} {} {} {} {}\n",
                        tx.provider,
                        tx.requester,
                        hex::encode(tx.query_hash),
                        tx.time,
                    ));
                }
                LedgerTx::Esar { seq, tx } => {
                    out.push_str(&format!(
                        "tx esar {seq} {} {}\n",
                        hex::encode(tx.esa_hash),
                        tx.time,
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn push_tx(
    blocks: &mut [Block<LedgerTx>],
    lineno: usize,
    tx: LedgerTx,
) -> Result<(), LedgerError> {
    blocks
        .last_mut()
        .ok_or_else(|| bad(lineno, "tx before any block"))?
        .txs
        .push(tx);
    Ok(())
}

pub fn import_side_chain(text: &str) -> Result<SideChain<LedgerTx>, LedgerError> {
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| bad(0, "missing trailing newline"))?;
    let mut lines = body.split('\n').enumerate();

    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty export"))?;
    let id = match header.split(' ').collect::<Vec<_>>()[..] {
        ["chain", id] => {
            check_token(1, id)?;
            id.to_string()
        }
        _ => return Err(bad(1, "expected `chain <id>`")),
    };

    let mut blocks: Vec<Block<LedgerTx>> = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(' ').collect();
        match fields[..] {
            ["block", height, prev, root, hash, timestamp, proposer] => {
                check_token(lineno, proposer)?;
                blocks.push(Block {
                    height: parse_u64(lineno, height)?,
                    prev_hash: parse_digest(lineno, prev)?,
                    merkle_root: parse_digest(lineno, root)?,
                    block_hash: parse_digest(lineno, hash)?,
                    meta: BlockMeta {
                        timestamp: parse_u64(lineno, timestamp)?,
                        proposer: proposer.to_string(),
                    },
                    txs: Vec::new(),
                });
            }
            ["tx", "esad", seq, owner, provider, esa_hash, deployed_at] => {
                check_token(lineno, owner)?;
                check_token(lineno, provider)?;
                let tx = LedgerTx::esad(
                    parse_u64(lineno, seq)?,
                    owner.to_string(),
                    provider.to_string(),
                    parse_digest(lineno, esa_hash)?,
                    parse_u64(lineno, deployed_at)?,
                );
                push_tx(&mut blocks, lineno, tx)?;
            }
            ["tx", "data", seq, provider, requester, query_hash, time] => {
                check_token(lineno, provider)?;
                check_token(lineno, requester)?;
                let tx = LedgerTx::data(
                    parse_u64(lineno, seq)?,
                    provider.to_string(),
                    requester.to_string(),
                    parse_digest(lineno, query_hash)?,
                    parse_u64(lineno, time)?,
                );
                push_tx(&mut blocks, lineno, tx)?;
            }
            ["tx", "esar", seq, esa_hash, time] => {
                let tx = LedgerTx::esar(
                    parse_u64(lineno, seq)?,
                    parse_digest(lineno, esa_hash)?,
                    parse_u64(lineno, time)?,
                );
                push_tx(&mut blocks, lineno, tx)?;
            }
            _ => return Err(bad(lineno, format!("malformed line `{line}`"))),
        }
    }
    if blocks.is_empty() {
        return Err(bad(0, "export holds no blocks"));
    }
    Ok(SideChain::from_blocks(id, blocks))
}

pub fn export_base_chain(base: &BaseChain) -> Result<String, LedgerError> {
    let mut out = format!("base {}\n", base.commit_delay);
    for r in base.records() {
        check_token(0, &r.side_chain_id)?;
        out.push_str(&format!(
            "anchor {} {} {} {}\n",
            r.side_chain_id,
            r.side_height,
            hex::encode(r.root),
            r.base_time,
        ));
    }
    Ok(out)
}

pub fn import_base_chain(text: &str) -> Result<BaseChain, LedgerError> {
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| bad(0, "missing trailing newline"))?;
    let mut lines = body.split('\n').enumerate();
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty export"))?;
    let delay = match header.split(' ').collect::<Vec<_>>()[..] {
        ["base", delay] => parse_u64(1, delay)?,
        _ => return Err(bad(1, "expected `base <commit-delay>`")),
    };
    let mut records = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        match line.split(' ').collect::<Vec<_>>()[..] {
            ["anchor", id, height, root, time] => {
                check_token(lineno, id)?;
                records.push(AnchorRecord {
                    side_chain_id: id.to_string(),
                    side_height: parse_u64(lineno, height)?,
                    root: parse_digest(lineno, root)?,
                    base_time: parse_u64(lineno, time)?,
                });
            }
            _ => return Err(bad(lineno, format!("malformed line `{line}`"))),
        }
    }
    Ok(BaseChain::from_records(delay, records))
}
