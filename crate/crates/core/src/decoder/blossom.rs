//! Maximum-weight matching on general graphs (Edmonds' blossom algorithm,
//! primal-dual form with O(n³) total work), plus the minimum-weight perfect
//! matching wrapper the decoder uses.
//!
//! Edge weights are integers and are doubled internally so every dual
//! update stays integral.

use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// One undirected edge of the matching instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchEdge {
    pub a: usize,
    pub b: usize,
    /// Primary cost.
    pub weight: u64,
    /// Secondary cost, compared only between matchings of equal weight.
    pub tie: u64,
}

/// Maximum-weight matching. With `max_cardinality` the result is a
/// maximum-weight matching among those of maximum size. Returns `mate[v]`.
pub fn max_weight_matching(nodes: usize, edges: &[(usize, usize, i64)], max_cardinality: bool) -> Vec<Option<usize>> {
    if edges.is_empty() || nodes == 0 {
        return vec![None; nodes];
    }
    let mut m = Matcher::new(nodes, edges);
    m.solve(max_cardinality);
    m.mate
        .iter()
        .map(|&p| (p != NONE).then(|| m.endpoint[p]))
        .collect()
}

/// Perfect matching minimising total `weight`, then total `tie`.
/// Returns pairs `(lo, hi)` sorted ascending.
pub fn min_weight_perfect_matching(nodes: usize, edges: &[MatchEdge]) -> Result<Vec<(usize, usize)>> {
    if nodes == 0 {
        return Ok(Vec::new());
    }
    if nodes % 2 == 1 {
        return Err(Error::OddDefects(nodes));
    }
    let half = (nodes / 2) as u64;
    let max_tie = edges.iter().map(|e| e.tie).max().unwrap_or(0);
    let scale = half
        .checked_mul(max_tie)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| Error::InvalidParameters("tie-break keys overflow".into()))?;
    let combined: Vec<u64> = edges
        .iter()
        .map(|e| e.weight.checked_mul(scale).and_then(|w| w.checked_add(e.tie)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidParameters("matching weights overflow".into()))?;
    let top = combined.iter().copied().max().unwrap_or(0);
    if top >= (i64::MAX as u64) / (4 * nodes as u64) {
        return Err(Error::InvalidParameters("matching weights overflow".into()));
    }
    let shifted: Vec<(usize, usize, i64)> = edges
        .iter()
        .zip(&combined)
        .map(|(e, &w)| (e.a, e.b, (top + 1 - w) as i64))
        .collect();
    let mate = max_weight_matching(nodes, &shifted, true);
    let mut pairs = Vec::with_capacity(nodes / 2);
    for (v, m) in mate.iter().enumerate() {
        match m {
            None => return Err(Error::NoPerfectMatching),
            Some(u) if v < *u => pairs.push((v, *u)),
            _ => {}
        }
    }
    Ok(pairs)
}

struct Matcher {
    nvertex: usize,
    edges: Vec<(usize, usize, i64)>,
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

fn wrap(j: isize, len: usize) -> usize {
    j.rem_euclid(len as isize) as usize
}

impl Matcher {
    fn new(nvertex: usize, input: &[(usize, usize, i64)]) -> Self {
        let edges: Vec<(usize, usize, i64)> = input.iter().map(|&(i, j, w)| (i, j, 2 * w)).collect();
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let mut endpoint = Vec::with_capacity(2 * edges.len());
        let mut neighbend = vec![Vec::new(); nvertex];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            endpoint.push(i);
            endpoint.push(j);
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let nedge = edges.len();
        let mut blossombase: Vec<usize> = (0..nvertex).collect();
        blossombase.extend(std::iter::repeat(NONE).take(nvertex));
        let mut dualvar = vec![maxweight; nvertex];
        dualvar.extend(std::iter::repeat(0).take(nvertex));
        Self {
            nvertex,
            edges,
            endpoint,
            neighbend,
            mate: vec![NONE; nvertex],
            label: vec![0; 2 * nvertex],
            labelend: vec![NONE; 2 * nvertex],
            inblossom: (0..nvertex).collect(),
            blossomparent: vec![NONE; 2 * nvertex],
            blossomchilds: vec![Vec::new(); 2 * nvertex],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * nvertex],
            bestedge: vec![NONE; 2 * nvertex],
            blossombestedges: vec![None; 2 * nvertex],
            unusedblossoms: (nvertex..2 * nvertex).collect(),
            dualvar,
            allowedge: vec![false; nedge],
            queue: Vec::new(),
        }
    }

    fn slack(&self, k: usize) -> i64 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn leaves(&self, b: usize, out: &mut Vec<usize>) {
        if b < self.nvertex {
            out.push(b);
        } else {
            for &t in &self.blossomchilds[b] {
                self.leaves(t, out);
            }
        }
    }

    fn blossom_leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.leaves(b, &mut out);
        out
    }

    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NONE;
        self.bestedge[b] = NONE;
        if t == 1 {
            let leaves = self.blossom_leaves(b);
            self.queue.extend(leaves);
        } else if t == 2 {
            let base = self.blossombase[b];
            let mb = self.mate[base];
            self.assign_label(self.endpoint[mb], 1, mb ^ 1);
        }
    }

    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            path.push(b);
            self.label[b] = 5;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom slots available");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;
        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        self.blossomchilds[b] = path.clone();
        self.blossomendps[b] = endps;
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        for leaf in self.blossom_leaves(b) {
            if self.label[self.inblossom[leaf]] == 2 {
                self.queue.push(leaf);
            }
            self.inblossom[leaf] = b;
        }
        let mut bestedgeto = vec![NONE; 2 * self.nvertex];
        for &sub in &path {
            let nblists: Vec<Vec<usize>> = match self.blossombestedges[sub].take() {
                Some(list) => vec![list],
                None => self
                    .blossom_leaves(sub)
                    .into_iter()
                    .map(|leaf| self.neighbend[leaf].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let _ = i;
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.bestedge[sub] = NONE;
        }
        let best: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        self.bestedge[b] = NONE;
        for &k in &best {
            if self.bestedge[b] == NONE || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
        self.blossombestedges[b] = Some(best);
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < self.nvertex {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for leaf in self.blossom_leaves(s) {
                    self.inblossom[leaf] = s;
                }
            }
        }
        if !endstage && self.label[b] == 2 {
            let len = childs.len();
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs.iter().position(|&c| c == entrychild).expect("entry child") as isize;
            let (jstep, endptrick): (isize, isize) = if j & 1 == 1 {
                j -= len as isize;
                (1, 0)
            } else {
                (-1, 1)
            };
            let endps = self.blossomendps[b].clone();
            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = 0;
                let q = endps[wrap(j - endptrick, len)] ^ (endptrick as usize) ^ 1;
                self.label[self.endpoint[q]] = 0;
                self.assign_label(self.endpoint[p ^ 1], 2, p);
                self.allowedge[endps[wrap(j - endptrick, len)] / 2] = true;
                j += jstep;
                p = endps[wrap(j - endptrick, len)] ^ (endptrick as usize);
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = childs[wrap(j, len)];
            let ep = self.endpoint[p ^ 1];
            self.label[ep] = 2;
            self.label[bv] = 2;
            self.labelend[ep] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while childs[wrap(j, len)] != entrychild {
                let bv = childs[wrap(j, len)];
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let leaves = self.blossom_leaves(bv);
                if let Some(&v) = leaves.iter().find(|&&v| self.label[v] != 0) {
                    self.label[v] = 0;
                    let mb = self.mate[self.blossombase[bv]];
                    self.label[self.endpoint[mb]] = 0;
                    self.assign_label(v, 2, self.labelend[v]);
                }
                j += jstep;
            }
        }
        self.label[b] = u8::MAX;
        self.labelend[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unusedblossoms.push(b);
    }

    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.nvertex {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len();
        let i = self.blossomchilds[b].iter().position(|&c| c == t).expect("child");
        let mut j = i as isize;
        let (jstep, endptrick): (isize, isize) = if i & 1 == 1 {
            j -= len as isize;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t1 = self.blossomchilds[b][wrap(j, len)];
            let p = self.blossomendps[b][wrap(j - endptrick, len)] ^ (endptrick as usize);
            if t1 >= self.nvertex {
                self.augment_blossom(t1, self.endpoint[p]);
            }
            j += jstep;
            let t2 = self.blossomchilds[b][wrap(j, len)];
            if t2 >= self.nvertex {
                self.augment_blossom(t2, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                if bs >= self.nvertex {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                if bt >= self.nvertex {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(&mut self, max_cardinality: bool) {
        let n = self.nvertex;
        for _ in 0..n {
            self.label.iter_mut().for_each(|l| *l = 0);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            for b in n..2 * n {
                self.blossombestedges[b] = None;
            }
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..n {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, NONE);
                }
            }
            let mut augmented = false;
            loop {
                while !augmented {
                    let Some(v) = self.queue.pop() else { break };
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }
                // deltatype: 1 stop, 2 grow via free vertex, 3 S-S edge, 4 expand T-blossom
                let mut deltatype = 0u8;
                let mut delta = 0i64;
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                if !max_cardinality {
                    deltatype = 1;
                    delta = *self.dualvar[..n].iter().min().expect("nonempty");
                }
                for v in 0..n {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if deltatype == 0 || d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * n {
                    if self.blossomparent[b] == NONE && self.label[b] == 1 && self.bestedge[b] != NONE {
                        let d = self.slack(self.bestedge[b]) / 2;
                        if deltatype == 0 || d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == 2
                        && (deltatype == 0 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if deltatype == 0 {
                    deltatype = 1;
                    delta = (*self.dualvar[..n].iter().min().expect("nonempty")).max(0);
                }
                for v in 0..n {
                    match self.label[self.inblossom[v]] {
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            _ => {}
                        }
                    }
                }
                match deltatype {
                    1 => break,
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }
            if !augmented {
                break;
            }
            for b in n..2 * n {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mates(nodes: usize, edges: &[(usize, usize, i64)], maxcard: bool) -> Vec<Option<usize>> {
        max_weight_matching(nodes, edges, maxcard)
    }

    #[test]
    fn small_known_cases() {
        assert_eq!(mates(0, &[], false), Vec::<Option<usize>>::new());
        assert_eq!(mates(2, &[(0, 1, 1)], false), vec![Some(1), Some(0)]);
        assert_eq!(
            mates(4, &[(1, 2, 10), (2, 3, 11)], false),
            vec![None, None, Some(3), Some(2)]
        );
        assert_eq!(
            mates(4, &[(1, 2, 5), (2, 3, 11), (3, 4, 5)].map(|(a, b, w)| (a - 1, b - 1, w)), false),
            vec![None, Some(2), Some(1), None]
        );
        assert_eq!(
            mates(4, &[(1, 2, 5), (2, 3, 11), (3, 4, 5)].map(|(a, b, w)| (a - 1, b - 1, w)), true),
            vec![Some(1), Some(0), Some(3), Some(2)]
        );
    }

    #[test]
    fn blossom_cases() {
        // S-blossom then augment.
        let e = [(1, 2, 8), (1, 3, 9), (2, 3, 10), (3, 4, 7)].map(|(a, b, w)| (a - 1, b - 1, w));
        assert_eq!(mates(4, &e, false), vec![Some(1), Some(0), Some(3), Some(2)]);
        // Nested S-blossom, relabel as T.
        let e = [(1, 2, 9), (1, 3, 9), (2, 3, 10), (2, 4, 8), (3, 5, 8), (4, 5, 10), (5, 6, 6)]
            .map(|(a, b, w)| (a - 1, b - 1, w));
        assert_eq!(
            mates(6, &e, false),
            vec![Some(2), Some(3), Some(0), Some(1), Some(5), Some(4)]
        );
        // Reference cases, 1-based with vertex 0 isolated.
        let one_based = |edges: &[(usize, usize, i64)], want: &[i64]| {
            let got = mates(want.len(), edges, false);
            let want: Vec<Option<usize>> = want.iter().map(|&m| (m >= 0).then_some(m as usize)).collect();
            assert_eq!(got, want);
        };
        // S-blossom relabeled as T, then expanded.
        one_based(
            &[(1, 2, 23), (1, 5, 22), (1, 6, 15), (2, 3, 25), (3, 4, 22), (4, 5, 25), (4, 8, 14), (5, 7, 13)],
            &[-1, 6, 3, 2, 8, 7, 1, 5, 4],
        );
        // Nested S-blossom expanded.
        one_based(
            &[
                (1, 2, 40), (1, 3, 40), (2, 3, 60), (2, 4, 55), (3, 5, 55), (4, 5, 50),
                (1, 8, 15), (5, 7, 30), (7, 6, 10), (8, 10, 10), (4, 9, 30),
            ],
            &[-1, 2, 1, 5, 9, 3, 7, 6, 10, 4, 8],
        );
        // T-blossom expansion where the least-slack edge moves.
        one_based(
            &[
                (1, 2, 45), (1, 5, 45), (2, 3, 50), (3, 4, 45), (4, 5, 50),
                (1, 6, 30), (3, 9, 35), (4, 8, 26), (5, 7, 40), (9, 10, 5),
            ],
            &[-1, 6, 3, 2, 8, 7, 1, 5, 4, 10, 9],
        );
    }

    fn brute_force(nodes: usize, w: &[Vec<Option<(u64, u64)>>]) -> Option<(u64, u64)> {
        fn rec(free: &mut Vec<usize>, w: &[Vec<Option<(u64, u64)>>]) -> Option<(u64, u64)> {
            if free.is_empty() {
                return Some((0, 0));
            }
            let a = free.remove(0);
            let mut best: Option<(u64, u64)> = None;
            for idx in 0..free.len() {
                let b = free.remove(idx);
                if let Some((x, t)) = w[a][b] {
                    if let Some((rx, rt)) = rec(free, w) {
                        let cand = (x + rx, t + rt);
                        if best.map_or(true, |bst| cand < bst) {
                            best = Some(cand);
                        }
                    }
                }
                free.insert(idx, b);
            }
            free.insert(0, a);
            best
        }
        rec(&mut (0..nodes).collect(), w)
    }

    fn instance() -> impl Strategy<Value = (usize, Vec<MatchEdge>)> {
        (1usize..=5).prop_flat_map(|half| {
            let nodes = 2 * half;
            let pairs = nodes * (nodes - 1) / 2;
            (
                Just(nodes),
                proptest::collection::vec((0u64..8, 0u64..4, proptest::bool::weighted(0.85)), pairs),
            )
                .prop_map(|(nodes, raw)| {
                    let mut edges = Vec::new();
                    let mut it = raw.into_iter();
                    for a in 0..nodes {
                        for b in a + 1..nodes {
                            let (w, t, keep) = it.next().unwrap();
                            if keep {
                                edges.push(MatchEdge { a, b, weight: w, tie: t });
                            }
                        }
                    }
                    (nodes, edges)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn matches_factorial_enumeration((nodes, edges) in instance()) {
            let mut w = vec![vec![None; nodes]; nodes];
            for e in &edges {
                w[e.a][e.b] = Some((e.weight, e.tie));
                w[e.b][e.a] = Some((e.weight, e.tie));
            }
            let expected = brute_force(nodes, &w);
            match min_weight_perfect_matching(nodes, &edges) {
                Ok(pairs) => {
                    prop_assert_eq!(pairs.len(), nodes / 2);
                    let mut seen = vec![false; nodes];
                    let mut total = (0u64, 0u64);
                    for (a, b) in pairs {
                        prop_assert!(!seen[a] && !seen[b]);
                        seen[a] = true;
                        seen[b] = true;
                        let (x, t) = w[a][b].expect("edge exists");
                        total = (total.0 + x, total.1 + t);
                    }
                    prop_assert_eq!(Some(total), expected);
                }
                Err(Error::NoPerfectMatching) => prop_assert_eq!(expected, None),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }

    #[test]
    fn odd_node_count_is_rejected() {
        assert_eq!(min_weight_perfect_matching(3, &[]), Err(Error::OddDefects(3)));
        assert_eq!(min_weight_perfect_matching(0, &[]), Ok(vec![]));
    }
}
