use crate::Int;

/// All set partitions of `{0, .., n-1}` as lists of blocks. Enumerated via
/// restricted-growth strings; `n = 0` yields the single empty partition.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(out: &mut Vec<Vec<Vec<usize>>>, rgs: &mut Vec<usize>, i: usize, max_used: usize) {
        let n = rgs.len();
        if i == n {
            let blocks = max_used + 1;
            let mut part: Vec<Vec<usize>> = vec![Vec::new(); if n == 0 { 0 } else { blocks }];
            for (elem, &b) in rgs.iter().enumerate() {
                part[b].push(elem);
            }
            out.push(part);
            return;
        }
        for b in 0..=max_used + 1 {
            rgs[i] = b;
            rec(out, rgs, i + 1, max_used.max(b));
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    // first element always opens block 0
    rgs[0] = 0;
    rec(&mut out, &mut rgs, 1, 0);
    out
}

/// Moebius function of the partition lattice between the discrete partition
/// and `blocks`: `prod_c (-1)^(|c|-1) (|c|-1)!`.
pub fn mobius_weight(blocks: &[Vec<usize>]) -> Int {
    let mut acc = Int::from(1);
    for c in blocks {
        let s = c.len() as u64;
        // (-1)^(s-1) * (s-1)!
        let mut f = Int::from(1);
        for i in 2..s {
            f *= Int::from(i);
        }
        if (s - 1) % 2 == 1 {
            f = -f;
        }
        acc *= f;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(n).len(), b, "Bell({n})");
        }
    }

    #[test]
    fn mobius_sums_to_zero() {
        // sum over all partitions of [n] of mu equals 0 for n >= 2
        for n in 2..6 {
            let total: Int = set_partitions(n).iter().map(|p| mobius_weight(p)).sum();
            assert_eq!(total, Int::from(0), "n={n}");
        }
    }
}
