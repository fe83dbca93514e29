"""The Schlaefli graph of the 27 lines and the action of W(E6) on it.

Labels are E1..E6, F12..F56, G1..G6 in that canonical order; two labels are
adjacent when the corresponding lines meet.
"""

from collections import deque
from functools import lru_cache
from itertools import combinations, permutations

from .tables import DOUBLE_SIX_ROWS, EXPOSED_TRIANGLES

E_LABELS = ["E%d" % i for i in range(1, 7)]
F_LABELS = ["F%d%d" % (i, j) for i, j in combinations(range(1, 7), 2)]
G_LABELS = ["G%d" % i for i in range(1, 7)]
LABELS = E_LABELS + F_LABELS + G_LABELS
INDEX = {name: i for i, name in enumerate(LABELS)}
N = 27

WEYL_ORDER = 51840


def kind(label):
    return label[0]


def indices(label):
    return tuple(int(ch) for ch in label[1:])


def label_index(label):
    try:
        return INDEX[label]
    except KeyError:
        raise ValueError("unknown line label %r" % label) from None


def _meet(a, b):
    ka, kb = a[0], b[0]
    ia, ib = set(indices(a)), set(indices(b))
    if ka > kb:
        ka, kb, ia, ib = kb, ka, ib, ia
    if ka == "E" and kb == "E":
        return False
    if ka == "G" and kb == "G":
        return False
    if ka == "E" and kb == "F":
        return bool(ia & ib)
    if ka == "E" and kb == "G":
        return ia != ib
    if ka == "F" and kb == "F":
        return not (ia & ib)
    if ka == "F" and kb == "G":
        return bool(ia & ib)
    raise AssertionError


def _build_adjacency():
    adj = [[False] * N for _ in range(N)]
    for i in range(N):
        for j in range(N):
            if i != j:
                adj[i][j] = _meet(LABELS[i], LABELS[j])
    return adj


ADJ = _build_adjacency()
NEIGHBORS = [frozenset(j for j in range(N) if ADJ[i][j]) for i in range(N)]


def meets(a, b):
    return ADJ[label_index(a)][label_index(b)]


class SchlaefliGraph:
    """Adjacency structure on the 27 labels."""

    labels = LABELS
    adj = ADJ
    neighbors = NEIGHBORS

    def edges(self):
        return [(i, j) for i in range(N) for j in range(i + 1, N) if ADJ[i][j]]

    def degree(self, i):
        return len(NEIGHBORS[i])

    def triangles(self):
        return [
            (i, j, k)
            for i in range(N)
            for j in NEIGHBORS[i] if j > i
            for k in NEIGHBORS[j] if k > j and ADJ[i][k]
        ]


# ---------------------------------------------------------------------------
# permutations of the labels


def _index_perm(sigma):
    """Label permutation induced by a permutation of {1..6} (tuple, 0-based images)."""
    def img(label):
        k = label[0]
        idx = [sigma[i - 1] + 1 for i in indices(label)]
        if k == "F":
            a, b = sorted(idx)
            return "F%d%d" % (a, b)
        return "%s%d" % (k, idx[0])

    return tuple(INDEX[img(l)] for l in LABELS)


CREMONA_CYCLES = [("F13", "G5"), ("F15", "G3"), ("F35", "G1"),
                  ("F24", "E6"), ("F26", "E4"), ("F46", "E2")]


def _cremona_perm():
    p = list(range(N))
    for a, b in CREMONA_CYCLES:
        ia, ib = INDEX[a], INDEX[b]
        p[ia], p[ib] = ib, ia
    return tuple(p)


def compose(p, q):
    """(p o q)(i) = p[q[i]]."""
    return tuple(p[i] for i in q)


def inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def preserves_adjacency(p):
    return all(ADJ[p[i]][p[j]] == ADJ[i][j] for i in range(N) for j in range(i + 1, N))


def generators():
    """Adjacent transpositions of {1..6} and the Cremona involution."""
    gens = []
    for i in range(5):
        s = list(range(6))
        s[i], s[i + 1] = s[i + 1], s[i]
        gens.append(_index_perm(tuple(s)))
    gens.append(_cremona_perm())
    return gens


class PermGroup:
    """Explicitly enumerated permutation group on the 27 labels."""

    def __init__(self, gens, elements):
        self.gens = list(gens)
        self.elements = elements

    def order(self):
        return len(self.elements)

    def __contains__(self, p):
        return tuple(p) in self.elements

    def __iter__(self):
        return iter(self.elements)


class GroupClosureError(RuntimeError):
    pass


def closure(gens, limit=WEYL_ORDER):
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > limit:
                        raise GroupClosureError("closure exceeds %d elements" % limit)
        frontier = nxt
    return seen


@lru_cache(maxsize=1)
def generate_weyl():
    """W(E6) as a set of 51840 label permutations, closed under composition."""
    gens = generators()
    for g in gens:
        if not preserves_adjacency(g):
            raise GroupClosureError("generator does not preserve adjacency")
    return PermGroup(gens, frozenset(closure(gens)))


def apply(p, labels):
    return tuple(p[i] for i in labels)


# ---------------------------------------------------------------------------
# cycles


def canonical_cycle(cyc):
    """Lexicographically minimal rotation/reflection of a cyclic index sequence."""
    cyc = list(cyc)
    k = len(cyc)
    best = None
    for seq in (cyc, cyc[::-1]):
        for r in range(k):
            cand = tuple(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return best


def is_chordless(cyc):
    k = len(cyc)
    for a in range(k):
        for b in range(a + 2, k):
            if a == 0 and b == k - 1:
                continue
            if ADJ[cyc[a]][cyc[b]]:
                return False
    return True


def enumerate_cycles(k, chordless=True, adj=None):
    """All k-cycles (3 <= k <= 8) as canonical index tuples.

    With ``chordless`` only induced cycles are returned.
    """
    if not 3 <= k <= 8:
        raise ValueError("cycle length must lie in 3..8")
    adj = adj or ADJ
    n = len(adj)
    nbrs = [[j for j in range(n) if adj[i][j]] for i in range(n)]
    out = []

    def extend(path, onpath):
        last = path[-1]
        s = path[0]
        if len(path) == k:
            if adj[last][s]:
                if path[1] < path[-1]:
                    out.append(tuple(path))
            return
        for v in nbrs[last]:
            if v <= s or v in onpath:
                continue
            if chordless:
                # v may only touch the last vertex, plus the start when closing
                bad = False
                for u in path[:-1]:
                    if adj[u][v] and not (u == s and len(path) == k - 1):
                        bad = True
                        break
                if bad:
                    continue
                if len(path) == k - 1 and not adj[v][s]:
                    continue
            path.append(v)
            onpath.add(v)
            extend(path, onpath)
            path.pop()
            onpath.discard(v)

    for s in range(n):
        extend([s], {s})
    return sorted(canonical_cycle(c) for c in out)


def orbit_decompose(items, group, act=None, canon=canonical_cycle):
    """Partition canonical objects into orbits under the group's generators.

    ``act(g, item)`` defaults to relabelling a cycle.  Returns a list of sorted
    orbits, largest first.
    """
    act = act or (lambda g, c: canon(apply(g, c)))
    remaining = set(items)
    orbits = []
    gens = group.gens if isinstance(group, PermGroup) else list(group)
    while remaining:
        start = min(remaining)
        orb = {start}
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for g in gens:
                d = act(g, c)
                if d not in orb:
                    orb.add(d)
                    queue.append(d)
        if not orb <= set(items):
            raise ValueError("item set is not closed under the group")
        remaining -= orb
        orbits.append(sorted(orb))
    orbits.sort(key=lambda o: (-len(o), o[0]))
    return orbits


def names(idx_seq):
    return [LABELS[i] for i in idx_seq]


def indices_of(names_seq):
    return tuple(label_index(n) for n in names_seq)


def parse_cycle(text):
    """Split concatenated labels such as 'F14F35F24F36F25'."""
    out = []
    i = 0
    while i < len(text):
        k = text[i]
        w = 3 if k == "F" else 2
        out.append(text[i:i + w])
        i += w
    return [label_index(l) for l in out]


def is_cycle(seq):
    k = len(seq)
    return len(set(seq)) == k and all(ADJ[seq[i]][seq[(i + 1) % k]] for i in range(k))


def cycles_on(vertices):
    """All cycles through exactly the given vertex set, canonical form."""
    vs = sorted(vertices)
    first, rest = vs[0], vs[1:]
    out = set()
    for perm in permutations(rest):
        seq = (first,) + perm
        if is_cycle(seq):
            out.add(canonical_cycle(seq))
    return sorted(out)


def cycle_from_labels(text):
    """Parse a cycle; a label string that is not itself a walk is read as a vertex set.

    The vertex set must then carry a unique cycle.
    """
    seq = parse_cycle(text)
    if is_cycle(seq):
        return canonical_cycle(seq)
    cands = cycles_on(seq)
    if len(cands) != 1:
        raise ValueError("%s does not determine a unique cycle" % text)
    return cands[0]


# ---------------------------------------------------------------------------
# local structure of cycles


class AmbiguousAdjoint(ValueError):
    pass


def distance2(i, j):
    return i != j and not ADJ[i][j]


def adjoint_vertex(cycle):
    """Unique label at distance two from all four labels of a 4-cycle."""
    if len(cycle) != 4:
        raise ValueError("adjoint vertex is defined for 4-cycles")
    cands = [v for v in range(N) if all(distance2(v, c) for c in cycle)]
    if len(cands) != 1:
        raise AmbiguousAdjoint("%d candidates" % len(cands))
    return cands[0]


def triangle_of(i, j):
    """The unique third line meeting two meeting lines."""
    if not ADJ[i][j]:
        raise ValueError("lines do not meet")
    third = [k for k in NEIGHBORS[i] & NEIGHBORS[j]]
    if len(third) != 1:
        raise AssertionError("edge not in a unique triangle")
    return third[0]


class PentagonStructure:
    def __init__(self, H1, e1, edge2, H2, L):
        self.H1 = H1
        self.e1 = e1
        self.edge2 = edge2
        self.H2 = H2
        self.L = L

    def as_names(self):
        return {
            "H1": names(self.H1), "e1": names(self.e1), "edge2": names(self.edge2),
            "H2": names(self.H2), "L": LABELS[self.L],
        }


def pentagon_structure(cycle):
    """Triangle H1 inside the cycle, chord e1, remaining edge, its triangle H2, line L."""
    c = list(cycle)
    if len(c) != 5:
        raise ValueError("pentagon structure needs a 5-cycle")
    tris = [t for t in combinations(c, 3) if ADJ[t[0]][t[1]] and ADJ[t[1]][t[2]] and ADJ[t[0]][t[2]]]
    if len(tris) != 1:
        raise ValueError("cycle does not contain exactly one triangle")
    H1 = tris[0]
    pos = {v: i for i, v in enumerate(c)}

    def consecutive(a, b):
        return (pos[a] - pos[b]) % 5 in (1, 4)

    chords = [(a, b) for a, b in combinations(H1, 2) if not consecutive(a, b)]
    if len(chords) != 1:
        raise ValueError("triangle has no unique chord")
    e1 = tuple(sorted(chords[0], key=lambda v: pos[v]))
    rest = [v for v in c if v not in H1]
    if not consecutive(rest[0], rest[1]):
        raise ValueError("remaining lines are not consecutive")
    edge2 = tuple(sorted(rest, key=lambda v: pos[v]))
    L = triangle_of(*edge2)
    H2 = (edge2[0], edge2[1], L)
    return PentagonStructure(H1, e1, edge2, H2, L)


# ---------------------------------------------------------------------------
# triangles, double-sixes


def tritangent_triples():
    """The 45 triangles of the Schlaefli graph (tritangent planes)."""
    return SchlaefliGraph().triangles()


def triangle_set(triples):
    return frozenset(frozenset(t) for t in triples)


class TriangleConfigs:
    """Orbit data of the exposed triangles.

    A labelled configuration is the triangle set together with the ordered
    pair of rows of the complementary double-six; the plain values refer to
    the triangle set alone.
    """

    def __init__(self, stabilizer_order, orbit_size, set_stabilizer_order, set_orbit_size, base):
        self.stabilizer_order = stabilizer_order
        self.orbit_size = orbit_size
        self.set_stabilizer_order = set_stabilizer_order
        self.set_orbit_size = set_orbit_size
        self.base = base


def _apply_config(g, config):
    return frozenset(frozenset(g[i] for i in t) for t in config)


def exposed_triangle_config():
    return triangle_set(parse_cycle(t) for t in EXPOSED_TRIANGLES)


def _apply_labelled(g, config):
    tris, top, bottom = config
    return (_apply_config(g, tris), frozenset(g[i] for i in top), frozenset(g[i] for i in bottom))


def _bfs_orbit(base, gens, act):
    orb = {base}
    queue = deque([base])
    while queue:
        c = queue.popleft()
        for g in gens:
            d = act(g, c)
            if d not in orb:
                orb.add(d)
                queue.append(d)
    return orb


def triangle_configurations(base=None, rows=None, group=None):
    """Stabilizers (brute force over the group) and orbits (BFS) of the exposed triangles."""
    base = base or exposed_triangle_config()
    top, bottom = rows or reference_double_six()
    labelled = (base, frozenset(top), frozenset(bottom))
    group = group or generate_weyl()
    set_stab = 0
    stab = 0
    for g in group.elements:
        if _apply_config(g, base) == base:
            set_stab += 1
            if _apply_labelled(g, labelled) == labelled:
                stab += 1
    orb = _bfs_orbit(labelled, group.gens, _apply_labelled)
    set_orb = _bfs_orbit(base, group.gens, _apply_config)
    return TriangleConfigs(stab, len(orb), set_stab, len(set_orb), labelled)


def _skew(i, j):
    return i != j and not ADJ[i][j]


def double_sixes():
    """All 36 double-sixes as pairs of 6-tuples (a_1..a_6; b_1..b_6).

    Each uses lines a_i, b_j with a's pairwise skew, b's pairwise skew and
    a_i meeting b_j exactly when i != j.
    """
    sixes = []
    # maximal sets of 6 pairwise skew lines
    def grow(cur, start):
        if len(cur) == 6:
            sixes.append(tuple(cur))
            return
        for v in range(start, N):
            if all(_skew(u, v) for u in cur):
                cur.append(v)
                grow(cur, v + 1)
                cur.pop()

    grow([], 0)
    found = set()
    out = []
    six_set = set(sixes)
    for a in sixes:
        partner = []
        for ai in a:
            # b_i: skew to a_i, meets the other five a's
            cands = [v for v in range(N) if v not in a and _skew(v, ai)
                     and all(ADJ[v][aj] for aj in a if aj != ai)]
            if len(cands) != 1:
                partner = None
                break
            partner.append(cands[0])
        if partner is None or tuple(sorted(partner)) not in six_set:
            continue
        key = frozenset([frozenset(a), frozenset(partner)])
        if key not in found:
            found.add(key)
            out.append((tuple(a), tuple(partner)))
    return out


def one_factorizations_k6():
    """All 1-factorizations of the complete graph on six vertices."""
    verts = list(range(6))

    def matchings(vs):
        if not vs:
            yield []
            return
        a = vs[0]
        for b in vs[1:]:
            rest = [v for v in vs if v not in (a, b)]
            for m in matchings(rest):
                yield [(a, b)] + m

    perfect = [frozenset(frozenset(e) for e in m) for m in matchings(verts)]
    edges = {frozenset(e) for e in combinations(verts, 2)}
    facts = set()

    def search(chosen, used):
        if len(chosen) == 5:
            facts.add(frozenset(chosen))
            return
        for m in perfect:
            if not (m & used):
                search(chosen | {m}, used | m)

    search(frozenset(), frozenset())
    return sorted(facts, key=lambda f: sorted(sorted(tuple(sorted(e)) for e in m) for m in f))


def double_sixes_and_factorizations():
    return len(double_sixes()), len(one_factorizations_k6())


def reference_double_six():
    top, bottom = DOUBLE_SIX_ROWS
    return indices_of(top), indices_of(bottom)


def is_double_six(top, bottom):
    if len(set(top) | set(bottom)) != 12:
        return False
    for i in range(6):
        for j in range(6):
            if i != j and not (_skew(top[i], top[j]) and _skew(bottom[i], bottom[j])):
                return False
            if i == j and not _skew(top[i], bottom[j]):
                return False
            if i != j and not ADJ[top[i]][bottom[j]]:
                return False
    return True
