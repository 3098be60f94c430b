//! MovieLens-format ratings: ingestion into a dense completed matrix, and a
//! seeded generator of files in the same format.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::{RATING_MAX, RATING_MIN};

pub const HEADER: &str = "userId,movieId,rating,timestamp";

/// Dense `users × movies` ratings with imputed cells flagged in `observed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatingsMatrix {
    /// Source user id of each row.
    pub users: Vec<u64>,
    /// Source movie id of each column.
    pub movies: Vec<u64>,
    /// Row-major values.
    pub values: Vec<f64>,
    pub observed: Vec<bool>,
}

impl RatingsMatrix {
    pub fn rows(&self) -> usize {
        self.users.len()
    }

    pub fn cols(&self) -> usize {
        self.movies.len()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols() + col]
    }

    pub fn observed_count(&self) -> usize {
        self.observed.iter().filter(|&&o| o).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rating {
    pub user: u64,
    pub movie: u64,
    pub rating: f64,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct RatingRow {
    user_id: u64,
    movie_id: u64,
    rating: f64,
    #[allow(dead_code)]
    timestamp: i64,
}

fn csv_line(e: &csv::Error) -> usize {
    e.position().map_or(0, |p| p.line() as usize)
}

/// Parses a ratings CSV with the header `userId,movieId,rating,timestamp`.
/// Line numbers in errors are 1-based and count the header.
pub fn parse_ratings(text: &str) -> Result<Vec<Rating>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Malformed {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let names: Vec<&str> = headers.iter().map(|h| h.trim_start_matches('\u{feff}')).collect();
    if names.join(",") != HEADER {
        return Err(Error::Malformed {
            line: 1,
            message: if names.iter().all(|n| n.is_empty()) {
                "missing header".into()
            } else {
                format!("expected header '{HEADER}', found '{}'", names.join(","))
            },
        });
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Malformed {
            line: csv_line(&e),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let row: RatingRow = record.deserialize(None).map_err(|e| Error::Malformed {
            line,
            message: e.to_string(),
        })?;
        if !(RATING_MIN..=RATING_MAX).contains(&row.rating) {
            return Err(Error::Malformed {
                line,
                message: format!("rating {} outside [0, 5]", row.rating),
            });
        }
        out.push(Rating {
            user: row.user_id,
            movie: row.movie_id,
            rating: row.rating,
        });
    }
    Ok(out)
}

/// Reads `path` and builds the completed matrix of the `movies` most-rated
/// movies and the `users` most active users on them.
pub fn ingest_movielens(path: &Path, users: usize, movies: usize) -> Result<RatingsMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let ratings = parse_ratings(&text)?;
    select_and_complete(&ratings, users, movies).map_err(|e| match e {
        Error::Precondition(message) => Error::Data {
            path: path.to_path_buf(),
            message,
        },
        e => e,
    })
}

/// Movie ranking by rating count (ties by smaller id), then user ranking by
/// count restricted to the chosen movies (ties by smaller id). Missing cells
/// take the row mean, or the global mean of the submatrix for an empty row.
pub fn select_and_complete(ratings: &[Rating], users: usize, movies: usize) -> Result<RatingsMatrix> {
    let mut movie_counts: HashMap<u64, usize> = HashMap::new();
    for r in ratings {
        *movie_counts.entry(r.movie).or_default() += 1;
    }
    if movie_counts.len() < movies {
        return Err(Error::Precondition(format!(
            "requested {movies} movies but only {} are rated",
            movie_counts.len()
        )));
    }
    let movie_ids = top_by_count(movie_counts, movies);
    let col_of: HashMap<u64, usize> = movie_ids.iter().enumerate().map(|(j, &m)| (m, j)).collect();

    let mut user_counts: HashMap<u64, usize> = HashMap::new();
    for r in ratings.iter().filter(|r| col_of.contains_key(&r.movie)) {
        *user_counts.entry(r.user).or_default() += 1;
    }
    if user_counts.len() < users {
        return Err(Error::Precondition(format!(
            "requested {users} users but only {} rated the selected movies",
            user_counts.len()
        )));
    }
    let user_ids = top_by_count(user_counts, users);
    let row_of: HashMap<u64, usize> = user_ids.iter().enumerate().map(|(i, &u)| (u, i)).collect();

    let cols = movie_ids.len();
    let mut values = vec![0.0; users * cols];
    let mut observed = vec![false; users * cols];
    for r in ratings {
        if let (Some(&i), Some(&j)) = (row_of.get(&r.user), col_of.get(&r.movie)) {
            if observed[i * cols + j] {
                return Err(Error::Precondition(format!(
                    "duplicate rating for user {} and movie {}",
                    r.user, r.movie
                )));
            }
            values[i * cols + j] = r.rating;
            observed[i * cols + j] = true;
        }
    }
    impute_row_means(&mut values, &observed, cols);
    Ok(RatingsMatrix {
        users: user_ids,
        movies: movie_ids,
        values,
        observed,
    })
}

fn top_by_count(counts: HashMap<u64, usize>, take: usize) -> Vec<u64> {
    let mut ranked: Vec<(u64, usize)> = counts.into_iter().collect();
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.into_iter().take(take).map(|(id, _)| id).collect()
}

fn impute_row_means(values: &mut [f64], observed: &[bool], cols: usize) {
    let (sum, count) = values
        .iter()
        .zip(observed)
        .filter(|(_, &o)| o)
        .fold((0.0, 0usize), |(s, c), (v, _)| (s + v, c + 1));
    let global = if count > 0 { sum / count as f64 } else { 0.0 };
    for (row, mask) in values.chunks_exact_mut(cols).zip(observed.chunks_exact(cols)) {
        let seen: Vec<f64> = row.iter().zip(mask).filter(|(_, &o)| o).map(|(v, _)| *v).collect();
        let fill = if seen.is_empty() {
            global
        } else {
            seen.iter().sum::<f64>() / seen.len() as f64
        };
        for (v, &o) in row.iter_mut().zip(mask) {
            if !o {
                *v = fill;
            }
        }
    }
}

/// Parameters of [`synthetic_ratings`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyntheticRatings {
    pub users: usize,
    pub movies: usize,
    /// Fewest ratings any user gives.
    pub min_per_user: usize,
    /// Largest number of ratings any user gives.
    pub max_per_user: usize,
    pub seed: u64,
}

impl SyntheticRatings {
    pub fn new(users: usize, movies: usize, seed: u64) -> Self {
        SyntheticRatings {
            users,
            movies,
            min_per_user: 20,
            max_per_user: movies.min(400),
            seed,
        }
    }
}

const TASTE_DIM: usize = 3;

/// MovieLens-like ratings with skewed movie popularity and user activity,
/// half-star ratings in `[0.5, 5]` from a low-rank taste model, returned as
/// CSV text with the standard header. Rows are sorted by user, then movie.
pub fn synthetic_ratings(p: &SyntheticRatings) -> Result<String> {
    if p.users == 0 || p.movies == 0 || p.min_per_user == 0 || p.min_per_user > p.max_per_user || p.max_per_user > p.movies {
        return Err(Error::Config(format!(
            "synthetic ratings need 0 < min_per_user ≤ max_per_user ≤ movies, got {} ≤ {} ≤ {}",
            p.min_per_user, p.max_per_user, p.movies
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut cumulative = Vec::with_capacity(p.movies);
    let mut total = 0.0;
    for j in 0..p.movies {
        total += 1.0 / ((j + 1) as f64).powf(0.8);
        cumulative.push(total);
    }
    let mut movie_factors = vec![0.0; p.movies * TASTE_DIM];
    movie_factors.iter_mut().for_each(|v| *v = rng.random_range(-1.0..1.0));
    let quality: Vec<f64> = (0..p.movies).map(|_| rng.random_range(-0.8..0.8)).collect();

    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    let span = (p.max_per_user - p.min_per_user) as f64;
    let mut timestamp: u64 = 964_982_703;
    for u in 0..p.users {
        let bias = rng.random_range(-0.6..0.6);
        let taste: Vec<f64> = (0..TASTE_DIM).map(|_| rng.random_range(-1.0..1.0)).collect();
        let activity = p.min_per_user + (span * rng.random::<f64>().powi(3)).round() as usize;
        let mut picked: BTreeMap<usize, ()> = BTreeMap::new();
        while picked.len() < activity {
            let r = rng.random::<f64>() * total;
            let j = cumulative.partition_point(|&c| c <= r).min(p.movies - 1);
            picked.insert(j, ());
        }
        for &j in picked.keys() {
            let affinity: f64 = taste
                .iter()
                .zip(&movie_factors[j * TASTE_DIM..(j + 1) * TASTE_DIM])
                .map(|(a, b)| a * b)
                .sum();
            let noise = rng.random_range(-0.5..0.5);
            let raw = 3.5 + bias + quality[j] + 0.8 * affinity + noise;
            let rating = ((raw * 2.0).round() / 2.0).clamp(0.5, 5.0);
            timestamp += rng.random_range(1..5000);
            writeln!(out, "{},{},{:.1},{}", u + 1, j + 1, rating, timestamp).expect("write to string");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_toy_file_is_reproduced() {
        let text = "userId,movieId,rating,timestamp\n1,1,4.0,0\n1,2,3.0,0\n1,3,5.0,0\n2,1,2.0,0\n2,2,1.0,0\n2,3,3.5,0\n3,1,0.5,0\n3,2,2.5,0\n3,3,4.5,0\n";
        let m = select_and_complete(&parse_ratings(text).unwrap(), 3, 3).unwrap();
        assert_eq!(m.users, vec![1, 2, 3]);
        assert_eq!(m.movies, vec![1, 2, 3]);
        assert_eq!(m.values, vec![4.0, 3.0, 5.0, 2.0, 1.0, 3.5, 0.5, 2.5, 4.5]);
        assert!(m.observed.iter().all(|&o| o));
    }

    #[test]
    fn missing_cell_is_row_mean() {
        let text = "userId,movieId,rating,timestamp\n1,1,4.0,0\n1,2,2.0,0\n2,1,3.0,0\n2,2,3.0,0\n2,3,5.0,0\n1,3,1.0,0\n3,1,1.0,0\n3,3,3.0,0\n";
        let m = select_and_complete(&parse_ratings(text).unwrap(), 3, 3).unwrap();
        // Movies 1 and 3 have three ratings, movie 2 two; users 1 and 2 rate
        // three movies, user 3 two.
        assert_eq!(m.movies, vec![1, 3, 2]);
        assert_eq!(m.users, vec![1, 2, 3]);
        assert_eq!(m.get(2, 2), 2.0);
        assert!(!m.observed[2 * 3 + 2]);
        assert_eq!(m.observed_count(), 8);
    }

    #[test]
    fn empty_row_uses_global_mean() {
        let ratings = vec![
            Rating { user: 1, movie: 1, rating: 4.0 },
            Rating { user: 1, movie: 2, rating: 2.0 },
            Rating { user: 2, movie: 3, rating: 5.0 },
        ];
        let m = select_and_complete(&ratings, 1, 2).unwrap();
        assert_eq!(m.values, vec![4.0, 2.0]);
        let ratings = vec![
            Rating { user: 1, movie: 1, rating: 4.0 },
            Rating { user: 1, movie: 1, rating: 2.0 },
        ];
        assert!(select_and_complete(&ratings, 1, 1).is_err());
    }

    #[test]
    fn malformed_rows_report_line_numbers() {
        let err = parse_ratings("userId,movieId,rating,timestamp\n1,1,4.0,0\n1,x,3,0\n").unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 3, .. }), "{err}");
        let err = parse_ratings("userId,movieId,rating,timestamp\n1,1,7.0,0\n").unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 2, .. }));
        let err = parse_ratings("user,movie\n").unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 1, .. }));
        let err = parse_ratings("userId,movieId,rating,timestamp\n1,1,4.0\n").unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 2, .. }));
    }

    #[test]
    fn size_errors() {
        let ratings = parse_ratings("userId,movieId,rating,timestamp\n1,1,4.0,0\n").unwrap();
        assert!(matches!(select_and_complete(&ratings, 1, 2), Err(Error::Precondition(_))));
        assert!(matches!(select_and_complete(&ratings, 2, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn synthetic_ratings_parse_and_repeat() {
        let p = SyntheticRatings::new(60, 300, 5);
        let a = synthetic_ratings(&p).unwrap();
        assert_eq!(a, synthetic_ratings(&p).unwrap());
        let ratings = parse_ratings(&a).unwrap();
        assert!(ratings.len() >= 60 * 20);
        let m = select_and_complete(&ratings, 50, 200).unwrap();
        assert_eq!((m.rows(), m.cols()), (50, 200));
        assert!(m.values.iter().all(|v| (0.0..=5.0).contains(v)));
    }
}
