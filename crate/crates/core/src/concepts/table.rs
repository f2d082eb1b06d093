use crate::error::{Error, Result};

/// Square bit matrix with `T[c][x] = c(x)`, rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    size: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl TruthTable {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let words_per_row = size.div_ceil(64);
        let mut bits = vec![0u64; size * words_per_row];
        for c in 0..size {
            let row = &mut bits[c * words_per_row..(c + 1) * words_per_row];
            for x in 0..size {
                if f(c, x) {
                    row[x / 64] |= 1 << (x % 64);
                }
            }
        }
        Self { size, words_per_row, bits }
    }

    /// Parses the plain-text layout: first line `N`, then `N` lines of `N`
    /// characters from `{0,1}`; line `c` is concept `c`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (first_no, first) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let size: usize = first.trim().parse().map_err(|_| Error::Parse {
            line: first_no + 1,
            message: format!("expected domain size, found {first:?}"),
        })?;
        if size == 0 {
            return Err(Error::Parse { line: first_no + 1, message: "domain size must be positive".into() });
        }
        let mut rows = Vec::with_capacity(size);
        for (no, line) in lines {
            let line = line.trim();
            if line.len() != size {
                return Err(Error::Parse {
                    line: no + 1,
                    message: format!("expected {size} characters, found {}", line.len()),
                });
            }
            let row = line
                .bytes()
                .map(|b| match b {
                    b'0' => Ok(false),
                    b'1' => Ok(true),
                    _ => Err(Error::Parse { line: no + 1, message: format!("invalid character {:?}", b as char) }),
                })
                .collect::<Result<Vec<bool>>>()?;
            rows.push(row);
        }
        if rows.len() != size {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("expected {size} rows, found {}", rows.len()),
            });
        }
        Ok(Self::from_fn(size, |c, x| rows[c][x]))
    }

    /// Inverse of [`TruthTable::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.size);
        for c in 0..self.size {
            out.extend((0..self.size).map(|x| if self.get(c, x) { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, c: usize, x: usize) -> bool {
        self.row_words(c)[x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn row_words(&self, c: usize) -> &[u64] {
        &self.bits[c * self.words_per_row..(c + 1) * self.words_per_row]
    }

    pub fn row_weight(&self, c: usize) -> usize {
        self.row_words(c).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of points where concepts `c` and `c2` disagree.
    pub fn hamming(&self, c: usize, c2: usize) -> usize {
        self.row_words(c).iter().zip(self.row_words(c2)).map(|(a, b)| (a ^ b).count_ones() as usize).sum()
    }

    /// True when no two rows coincide.
    pub fn rows_distinct(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.size);
        (0..self.size).all(|c| seen.insert(self.row_words(c)))
    }
}
