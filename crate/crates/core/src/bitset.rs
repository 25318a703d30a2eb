//! Fixed-size bitsets with shifted word reads, used by the progression scans.

#[derive(Debug, Clone)]
pub(crate) struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    /// Bits `0..len`, bit `i` set iff `f(i)`.
    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for i in 0..len {
            if f(i) {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Bitset { words }
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Bits `64 w + shift .. 64 w + shift + 64`, zero past the end.
    #[inline]
    pub fn shifted_word(&self, w: usize, shift: usize) -> u64 {
        let q = w + shift / 64;
        let o = shift % 64;
        let lo = self.words.get(q).copied().unwrap_or(0);
        if o == 0 {
            lo
        } else {
            let hi = self.words.get(q + 1).copied().unwrap_or(0);
            (lo >> o) | (hi << (64 - o))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_reads() {
        let b = Bitset::from_fn(200, |i| i % 7 == 0);
        for shift in [0, 1, 5, 63, 64, 65, 130] {
            for w in 0..b.word_count() {
                let word = b.shifted_word(w, shift);
                for bit in 0..64 {
                    let i = 64 * w + shift + bit;
                    let expect = i < 200 && i % 7 == 0;
                    assert_eq!(
                        word >> bit & 1 == 1,
                        expect,
                        "w={w} shift={shift} bit={bit}"
                    );
                }
            }
        }
    }
}
