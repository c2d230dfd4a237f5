//! Seeded 64-bit linear congruential generator.
//!
//! `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`.
//! Outputs are the high 32 bits of the updated state, so that sampled
//! supports are reproducible from the seed alone in any language.

#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish value in `0..bound` by reduction modulo `bound`.
    pub fn below(&mut self, bound: u32) -> u32 {
        assert!(bound > 0);
        self.next_u32() % bound
    }

    /// `count` distinct values from `0..bound`, in draw order, by rejection.
    pub fn distinct(&mut self, count: usize, bound: u32) -> Vec<u32> {
        assert!(count as u64 <= bound as u64);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let v = self.below(bound);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_outputs_from_seed_zero() {
        let mut r = Lcg64::new(0);
        // state_1 = INCREMENT, state_2 = INCREMENT * (MULTIPLIER + 1)
        assert_eq!(r.next_u32(), (Lcg64::INCREMENT >> 32) as u32);
        let s2 = Lcg64::INCREMENT.wrapping_mul(Lcg64::MULTIPLIER).wrapping_add(Lcg64::INCREMENT);
        assert_eq!(r.next_u32(), (s2 >> 32) as u32);
    }

    #[test]
    fn distinct_values() {
        let mut r = Lcg64::new(7);
        let v = r.distinct(10, 10);
        let mut s = v.clone();
        s.sort();
        assert_eq!(s, (0..10).collect::<Vec<_>>());
    }
}
