//! Aggregation over the global clique along the static binary tree whose
//! node i has parent (i − 1) / 2.

use crate::graphs::flog2;
use crate::netsim::{Envelope, Net, Payload, SimError};

fn depth_of(i: usize) -> usize {
    flog2(i + 1)
}

/// Every node learns the fold of all values under `op`. 2·⌊log₂ n⌋ rounds.
pub fn allreduce<T: Payload>(
    net: &mut Net,
    vals: Vec<T>,
    op: impl Fn(&T, &T) -> T,
) -> Result<Vec<T>, SimError> {
    let n = vals.len();
    let depth = depth_of(n - 1);
    let mut acc = vals;
    for level in (1..=depth).rev() {
        let out: Vec<_> = (0..n)
            .filter(|&i| depth_of(i) == level)
            .map(|i| Envelope::global(i, (i - 1) / 2, acc[i].clone()))
            .collect();
        for (dst, d) in net.exchange(out)? {
            acc[dst] = op(&acc[dst], &d.body);
        }
    }
    for level in 0..depth {
        let out: Vec<_> = (0..n)
            .filter(|&i| depth_of(i) == level)
            .flat_map(|i| [2 * i + 1, 2 * i + 2].into_iter().filter(move |&c| c < n).map(move |c| (i, c)))
            .map(|(i, c)| Envelope::global(i, c, acc[i].clone()))
            .collect();
        for (dst, d) in net.exchange(out)? {
            acc[dst] = d.body;
        }
    }
    Ok(acc)
}

pub fn allreduce_max<T: Payload + Ord>(net: &mut Net, vals: Vec<T>) -> Result<Vec<T>, SimError> {
    allreduce(net, vals, |a, b| if b > a { b.clone() } else { a.clone() })
}

pub fn allreduce_min<T: Payload + Ord>(net: &mut Net, vals: Vec<T>) -> Result<Vec<T>, SimError> {
    allreduce(net, vals, |a, b| if b < a { b.clone() } else { a.clone() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Count(u64);

impl Payload for Count {
    fn bits(&self, w: &crate::netsim::Widths) -> u32 {
        w.weight
    }
}

/// Dense numbering: node i receives the offset of its block of `counts[i]`
/// consecutive numbers (blocks in preorder of the aggregation tree) and the
/// total. 2·⌊log₂ n⌋ rounds.
pub fn dense_offsets(net: &mut Net, counts: &[u64]) -> Result<(Vec<u64>, u64), SimError> {
    let n = counts.len();
    let depth = depth_of(n - 1);
    let mut sub: Vec<u64> = counts.to_vec();
    let mut left_sub = vec![0u64; n];
    for level in (1..=depth).rev() {
        let out: Vec<_> = (0..n)
            .filter(|&i| depth_of(i) == level)
            .map(|i| Envelope::global(i, (i - 1) / 2, (i % 2 == 1, Count(sub[i]))))
            .collect();
        for (dst, d) in net.exchange(out)? {
            let (is_left, c) = d.body;
            sub[dst] += c.0;
            if is_left {
                left_sub[dst] = c.0;
            }
        }
    }
    let mut off = vec![0u64; n];
    let mut total = vec![sub[0]; n];
    for level in 0..depth {
        let mut out = Vec::new();
        for i in (0..n).filter(|&i| depth_of(i) == level) {
            let l = 2 * i + 1;
            let t = Count(total[i]);
            if l < n {
                out.push(Envelope::global(i, l, (Count(off[i] + counts[i]), t)));
            }
            if l + 1 < n {
                let o = Count(off[i] + counts[i] + left_sub[i]);
                out.push(Envelope::global(i, l + 1, (o, t)));
            }
        }
        for (dst, d) in net.exchange(out)? {
            off[dst] = d.body.0 .0;
            total[dst] = d.body.1 .0;
        }
    }
    Ok((off, total[0]))
}
