//! Reference implementations on plain strings, written independently of the
//! library types. Lowercase letters are generators, uppercase their inverses.
#![allow(dead_code)]

use invsub::{Endomorphism, Substitution};

pub fn inv_char(c: char) -> char {
    if c.is_ascii_lowercase() {
        c.to_ascii_uppercase()
    } else {
        c.to_ascii_lowercase()
    }
}

/// Free reduction with a stack.
pub fn reduce(s: &str) -> String {
    let mut out: Vec<char> = Vec::new();
    for c in s.chars() {
        if out.last() == Some(&inv_char(c)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out.into_iter().collect()
}

pub fn inverse(s: &str) -> String {
    s.chars().rev().map(inv_char).collect()
}

/// Sign runs of a word, e.g. `"+-+"`.
pub fn sign_pattern(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        let sign = if c.is_ascii_lowercase() { '+' } else { '-' };
        if !out.ends_with(sign) {
            out.push(sign);
        }
    }
    out
}

/// Positive words of length `lo..=hi` as strings.
pub fn words(lo: usize, hi: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut layer = vec![String::new()];
    for n in 0..=hi {
        if n >= lo {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|w| ['a', 'b', 'c'].map(|c| format!("{w}{c}")))
            .collect();
    }
    out
}

/// Every `wᵢ wₖ⁻¹ wⱼ` with `i ≠ k`, `j ≠ k` reduces to `+−+`. Single-letter
/// images satisfy this trivially (`a·B·c`), so permutations are excluded.
pub fn is_mixed(images: &[String; 3]) -> bool {
    if images.iter().all(|w| w.len() == 1) {
        return false;
    }
    for k in 0..3 {
        for i in (0..3).filter(|&i| i != k) {
            for j in (0..3).filter(|&j| j != k) {
                let w = reduce(&format!("{}{}{}", images[i], inverse(&images[k]), images[j]));
                if sign_pattern(&w) != "+-+" {
                    return false;
                }
            }
        }
    }
    true
}

fn first(s: &str) -> char {
    s.chars().next().expect("non-empty")
}

fn last(s: &str) -> char {
    s.chars().last().expect("non-empty")
}

/// Hypotheses on `u, v, x, y` under which `(ux, uv, yv)` is not invertible.
pub fn blocks_ux_uv_yv(u: &str, v: &str, x: &str, y: &str) -> bool {
    first(u) != first(y)
        && last(x) != last(v)
        && !v.starts_with(x)
        && !x.starts_with(v)
        && !u.ends_with(y)
        && !y.ends_with(u)
}

/// Hypotheses on `u, v, x, y` under which `(uxv, uv, y)` is not invertible.
pub fn blocks_uxv_uv_y(u: &str, v: &str, x: &str, y: &str) -> bool {
    first(u) != first(y) && last(v) != last(y) && !format!("{x}{v}").starts_with(v) && !format!("{u}{x}").ends_with(u)
}

pub fn triple(a: &str, b: &str, c: &str) -> [String; 3] {
    [a.to_string(), b.to_string(), c.to_string()]
}

pub fn endo(images: &[String; 3]) -> Endomorphism {
    images.join(",").parse().expect("valid images")
}

pub fn sub(images: &[String; 3]) -> Substitution {
    images.join(",").parse().expect("valid substitution")
}

/// Applies a positive substitution on strings.
pub fn apply(images: &[String], w: &str) -> String {
    w.chars()
        .map(|c| images[(c as u8 - b'a') as usize].as_str())
        .collect()
}

/// `f ∘ g` for substitutions on any number of letters.
pub fn compose(f: &[String], g: &[String]) -> Vec<String> {
    g.iter().map(|w| apply(f, w)).collect()
}

/// Longest common prefix of strings.
pub fn common_prefix(ws: &[String]) -> String {
    let first = &ws[0];
    let n = (0..=first.len())
        .rev()
        .find(|&n| ws.iter().all(|w| w.starts_with(&first[..n])))
        .unwrap_or(0);
    first[..n].to_string()
}

pub fn common_suffix(ws: &[String]) -> String {
    let rev: Vec<String> = ws.iter().map(|w| w.chars().rev().collect()).collect();
    common_prefix(&rev).chars().rev().collect()
}

/// Applies an endomorphism of the free group given by string images.
pub fn apply_group(images: &[String; 3], w: &str) -> String {
    let raw: String = w
        .chars()
        .map(|c| {
            let image = &images[(c.to_ascii_lowercase() as u8 - b'a') as usize];
            if c.is_ascii_lowercase() {
                image.clone()
            } else {
                inverse(image)
            }
        })
        .collect();
    reduce(&raw)
}

/// `f ∘ g` in the free group.
pub fn compose_group(f: &[String; 3], g: &[String; 3]) -> [String; 3] {
    g.clone().map(|w| apply_group(f, &w))
}

/// Determinant by the rule of Sarrus.
pub fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * m[1][1] * m[2][2] + m[0][1] * m[1][2] * m[2][0] + m[0][2] * m[1][0] * m[2][1]
        - m[0][2] * m[1][1] * m[2][0]
        - m[0][0] * m[1][2] * m[2][1]
        - m[0][1] * m[1][0] * m[2][2]
}

pub fn mat_mul(x: &[[i64; 3]; 3], y: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

/// Column `x` counts the letters of the image of `x`.
pub fn letter_matrix(images: &[String; 3]) -> [[i64; 3]; 3] {
    let mut m = [[0; 3]; 3];
    for (col, w) in images.iter().enumerate() {
        for c in w.chars() {
            let row = (c.to_ascii_lowercase() as u8 - b'a') as usize;
            m[row][col] += if c.is_ascii_lowercase() { 1 } else { -1 };
        }
    }
    m
}

pub fn images_of(e: &Endomorphism) -> [String; 3] {
    e.images().clone().map(|w| w.to_string())
}
