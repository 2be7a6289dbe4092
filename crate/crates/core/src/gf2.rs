//! Word-level Gaussian elimination over GF(2).

/// Rank of a bit matrix given as rows of packed 64-bit words.
///
/// Rows are consumed in order; each is reduced against the pivots found so
/// far and becomes a new pivot if anything survives. All rows must have the
/// same word length.
pub fn rank(rows: impl IntoIterator<Item = Vec<u64>>) -> usize {
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    for mut row in rows {
        loop {
            let Some(lead) = leading_bit(&row) else {
                break;
            };
            match pivots.iter().find(|(p, _)| *p == lead) {
                Some((_, pivot_row)) => {
                    for (r, p) in row.iter_mut().zip(pivot_row) {
                        *r ^= p;
                    }
                }
                None => {
                    pivots.push((lead, row));
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn leading_bit(row: &[u64]) -> Option<usize> {
    for (i, &w) in row.iter().enumerate() {
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}
