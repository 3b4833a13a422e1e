//! Balls of every word of one length stored as bitsets over `Σ^(n-1)`.

use crate::error_balls::run_deletions;
use crate::sequences::Word;

pub(crate) struct DenseBalls {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl DenseBalls {
    fn build(n: usize, fill: impl Fn(&Word, &mut dyn FnMut(u64))) -> Self {
        assert!((1..32).contains(&n), "dense balls need 1 <= n < 32");
        let stride = (1usize << (n - 1)).div_ceil(64);
        let mut bits = vec![0u64; stride << n];
        for (index, x) in Word::all(n).enumerate() {
            let row = &mut bits[index * stride..(index + 1) * stride];
            fill(&x, &mut |z| row[(z / 64) as usize] |= 1u64 << (z % 64));
        }
        DenseBalls { n, stride, bits }
    }

    /// `B(x)` for every `x` of length `n`.
    pub fn ds(n: usize) -> Self {
        Self::build(n, |x, set| {
            for z in run_deletions(x) {
                set(z.bits());
                for k in 1..n {
                    set(z.flip(k).bits());
                }
            }
        })
    }

    /// `D(x)` for every `x` of length `n`.
    pub fn del(n: usize) -> Self {
        Self::build(n, |x, set| {
            for z in run_deletions(x) {
                set(z.bits());
            }
        })
    }

    #[inline]
    pub fn row(&self, index: u64) -> &[u64] {
        let i = index as usize * self.stride;
        &self.bits[i..i + self.stride]
    }

    #[inline]
    pub fn common(&self, i: u64, j: u64) -> u32 {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn common_members(&self, i: u64, j: u64) -> Vec<Word> {
        let mut out = Vec::new();
        for (k, (a, b)) in self.row(i).iter().zip(self.row(j)).enumerate() {
            let mut v = a & b;
            while v != 0 {
                let bit = v.trailing_zeros() as u64;
                out.push(Word::from_bits(k as u64 * 64 + bit, self.n - 1));
                v &= v - 1;
            }
        }
        out
    }

    #[inline]
    pub fn contains(&self, index: u64, z: &Word) -> bool {
        let b = z.bits();
        self.row(index)[(b / 64) as usize] >> (b % 64) & 1 == 1
    }

    /// Size of the triple intersection of rows `i`, `j`, `k`.
    pub fn common3(&self, i: u64, j: u64, k: u64) -> u32 {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .zip(self.row(k))
            .map(|((a, b), c)| (a & b & c).count_ones())
            .sum()
    }
}
