#![allow(dead_code)]

/// Direct recursive transcription of the partition procedure, written without
/// the library's scratch buffer or work stack. Returns the sorted output and
/// `(comparisons, writes, max_depth)`.
pub fn literal_new_sort<T: PartialOrd + Copy>(arr: &[T]) -> (Vec<T>, (u64, u64, u64)) {
    let mut counters = (0, 0, 0);
    let out = literal_rec(arr.to_vec(), 1, &mut counters);
    (out, counters)
}

fn literal_rec<T: PartialOrd + Copy>(arr: Vec<T>, depth: u64, c: &mut (u64, u64, u64)) -> Vec<T> {
    if arr.len() <= 1 {
        return arr;
    }
    c.2 = c.2.max(depth);
    // pivot is the first element
    let pivot = arr[0];
    let mut temp: Vec<Option<T>> = vec![None; arr.len()];
    let mut first_unfilled = 0;
    let mut last_unfilled = arr.len() - 1;
    for &element in &arr[1..] {
        c.0 += 1;
        if pivot < element {
            temp[last_unfilled] = Some(element);
            last_unfilled = last_unfilled.wrapping_sub(1);
        } else {
            temp[first_unfilled] = Some(element);
            first_unfilled += 1;
        }
    }
    // the single blank slot receives the pivot
    let blank = temp.iter().position(Option::is_none).unwrap();
    temp[blank] = Some(pivot);
    c.1 += 2 * arr.len() as u64;
    let filled: Vec<T> = temp.into_iter().map(Option::unwrap).collect();
    let mut left = literal_rec(filled[..blank].to_vec(), depth + 1, c);
    let right = literal_rec(filled[blank + 1..].to_vec(), depth + 1, c);
    left.push(pivot);
    left.extend(right);
    left
}

/// Every permutation of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<i64> = (0..n as i64).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `2(n+1)H_n - 4n`, the expected comparisons of first-element-pivot
/// Quicksort on a random permutation of distinct keys.
pub fn expected_comparisons(n: u64) -> f64 {
    let h: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
    2.0 * (n as f64 + 1.0) * h - 4.0 * n as f64
}

/// Solves the raw-basis normal equations `(VᵀV) c = Vᵀy` by Gaussian
/// elimination with partial pivoting. Independent of the QR solver.
pub fn normal_equations_fit(xs: &[f64], ys: &[f64], degree: usize) -> Vec<f64> {
    let p = degree + 1;
    let mut m = vec![vec![0.0f64; p + 1]; p];
    for (x, y) in xs.iter().zip(ys) {
        let powers: Vec<f64> = (0..p).map(|j| x.powi(j as i32)).collect();
        for r in 0..p {
            for c in 0..p {
                m[r][c] += powers[r] * powers[c];
            }
            m[r][p] += powers[r] * y;
        }
    }
    for col in 0..p {
        let piv = (col..p)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, piv);
        for r in 0..p {
            if r != col {
                let f = m[r][col] / m[col][col];
                let pivot_row = m[col].clone();
                for (cell, pv) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *cell -= f * pv;
                }
            }
        }
    }
    (0..p).map(|r| m[r][p] / m[r][r]).collect()
}

pub fn ss_res(xs: &[f64], ys: &[f64], coeffs: &[f64]) -> f64 {
    xs.iter()
        .zip(ys)
        .map(|(x, y)| {
            let yhat: f64 = coeffs.iter().enumerate().map(|(j, c)| c * x.powi(j as i32)).sum();
            (y - yhat).powi(2)
        })
        .sum()
}

/// Trial CSV with the `elapsed_ns` column dropped.
pub fn strip_elapsed(csv: &str) -> String {
    csv.lines()
        .map(|line| line.rsplit_once(',').map_or(line, |(head, _)| head))
        .collect::<Vec<_>>()
        .join("\n")
}
