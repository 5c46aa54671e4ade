use crate::problem::Problem;
use crate::set::full_mask;

/// Length of the longest strictly nested chain `H_1 ⊊ ... ⊊ H_L` of absent
/// receivers, 0 when none are absent.
///
/// `h(T)` is the longest such chain inside `T`; `h(T) = [T absent] +
/// max_{i∈T} h(T \ {i})`, since every proper subset of `T` sits inside some
/// `T \ {i}`. The full set is never absent.
pub fn nested_chain_length(p: &Problem) -> usize {
    let m = p.m();
    let full = full_mask(m);
    let present = p.presence_table();
    let mut h = vec![0u8; 1usize << m];
    for t in 0..=full {
        let mut inner = 0u8;
        let mut bits = t;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            bits ^= bit;
            inner = inner.max(h[(t ^ bit) as usize]);
        }
        let absent = t != full && !present[t as usize];
        h[t as usize] = inner + absent as u8;
    }
    h[full as usize] as usize
}

/// `m - L` for the longest nested absent chain `L`.
pub fn nested_chain_bound(p: &Problem) -> usize {
    p.m() - nested_chain_length(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::MessageSet;

    fn from_absent(m: usize, abs: &[&[usize]]) -> Problem {
        let sets: Vec<MessageSet> = abs.iter().map(|a| MessageSet::from_indices(m, a).unwrap()).collect();
        Problem::from_absent(m, &sets).unwrap()
    }

    #[test]
    fn reference_families() {
        assert_eq!(nested_chain_length(&from_absent(5, &[&[3], &[1, 2, 3], &[3, 4, 5]])), 2);
        assert_eq!(nested_chain_length(&from_absent(5, &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]])), 1);
        assert_eq!(nested_chain_length(&Problem::complete(4).unwrap()), 0);
        assert_eq!(nested_chain_bound(&from_absent(5, &[&[3], &[1, 2, 3], &[3, 4, 5]])), 3);
        assert_eq!(nested_chain_bound(&from_absent(5, &[&[1, 2, 3], &[3], &[3, 4]])), 3);
        assert_eq!(nested_chain_bound(&Problem::complete(4).unwrap()), 4);
    }

    #[test]
    fn empty_family_chain_is_maximal() {
        // every proper subset absent: ∅ ⊊ {1} ⊊ {1,2}
        assert_eq!(nested_chain_length(&Problem::new(3, &[]).unwrap()), 3);
    }
}
