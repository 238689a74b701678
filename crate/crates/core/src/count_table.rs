//! Open-addressed `u64 -> u64` counting table.
//!
//! Fingerprint histograms take one insertion per pair `(x1, x2)`, so the
//! table is on the hot path of every counting routine. Keys are packed field
//! indices and are well spread already; a single Fibonacci multiply-shift
//! gives the slot and collisions probe linearly. The table doubles at half
//! load, which keeps probe sequences short without tombstones (entries are
//! never removed).

const EMPTY: u64 = u64::MAX;
const FIBONACCI: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone)]
pub struct CountTable {
    keys: Vec<u64>,
    counts: Vec<u64>,
    len: usize,
    shift: u32,
}

impl Default for CountTable {
    fn default() -> Self {
        Self::with_capacity(16)
    }
}

impl CountTable {
    pub fn with_capacity(capacity: usize) -> Self {
        let slots = (capacity.max(8) * 2).next_power_of_two();
        CountTable {
            keys: vec![EMPTY; slots],
            counts: vec![0; slots],
            len: 0,
            shift: 64 - slots.trailing_zeros(),
        }
    }

    /// Number of distinct keys.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn slot(&self, key: u64) -> usize {
        (key.wrapping_mul(FIBONACCI) >> self.shift) as usize
    }

    /// Adds `n` to the count of `key`. `u64::MAX` is reserved.
    #[inline]
    pub fn add(&mut self, key: u64, n: u64) {
        debug_assert_ne!(key, EMPTY);
        if 2 * (self.len + 1) > self.keys.len() {
            self.grow();
        }
        let mask = self.keys.len() - 1;
        let mut i = self.slot(key);
        loop {
            let k = self.keys[i];
            if k == key {
                self.counts[i] += n;
                return;
            }
            if k == EMPTY {
                self.keys[i] = key;
                self.counts[i] = n;
                self.len += 1;
                return;
            }
            i = (i + 1) & mask;
        }
    }

    #[inline]
    pub fn get(&self, key: u64) -> u64 {
        let mask = self.keys.len() - 1;
        let mut i = self.slot(key);
        loop {
            let k = self.keys[i];
            if k == key {
                return self.counts[i];
            }
            if k == EMPTY {
                return 0;
            }
            i = (i + 1) & mask;
        }
    }

    fn grow(&mut self) {
        let mut bigger = CountTable::with_capacity(self.keys.len());
        for (k, c) in self.iter() {
            bigger.add(k, c);
        }
        *self = bigger;
    }

    /// Occupied `(key, count)` entries in slot order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.keys
            .iter()
            .zip(&self.counts)
            .filter(|(&k, _)| k != EMPTY)
            .map(|(&k, &c)| (k, c))
    }

    /// Sum of all counts.
    pub fn total(&self) -> u64 {
        self.iter().map(|(_, c)| c).sum()
    }

    /// Adds every entry of `other` into `self`. Counts are additive, so the
    /// merged table does not depend on merge order.
    pub fn merge(mut self, other: CountTable) -> CountTable {
        let (mut big, small) = if other.len > self.len {
            (other, std::mem::take(&mut self))
        } else {
            (self, other)
        };
        for (k, c) in small.iter() {
            big.add(k, c);
        }
        big
    }

    pub fn clear(&mut self) {
        self.keys.fill(EMPTY);
        self.len = 0;
    }
}
