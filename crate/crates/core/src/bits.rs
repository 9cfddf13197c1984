//! Small helpers for `u64` vertex masks.

/// Iterator over the set bit positions of a mask, ascending.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub fn mask_of<I: IntoIterator<Item = usize>>(items: I) -> u64 {
    items.into_iter().fold(0, |m, i| m | (1u64 << i))
}

#[inline]
pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn to_vec(mask: u64) -> Vec<usize> {
    Bits(mask).collect()
}

/// Orders two masks as sorted index sequences (lexicographic on the
/// ascending member lists).
pub fn lex_cmp(a: u64, b: u64) -> std::cmp::Ordering {
    let mut ia = Bits(a);
    let mut ib = Bits(b);
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return std::cmp::Ordering::Equal,
            (None, Some(_)) => return std::cmp::Ordering::Less,
            (Some(_), None) => return std::cmp::Ordering::Greater,
            (Some(x), Some(y)) if x != y => return x.cmp(&y),
            _ => {}
        }
    }
}
