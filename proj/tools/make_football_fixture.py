"""Writes the offline football-like fixture to data/football/.

115 teams in 11 conferences plus 8 independents, 613 games. Each team plays
about seven conference games; the rest of the schedule is drawn uniformly
across conferences. The output is committed, so the script only matters when
the fixture needs regenerating.
"""

import argparse
import itertools
import random
from pathlib import Path

CONFERENCE_SIZES = [9, 8, 11, 12, 10, 12, 9, 8, 12, 7, 9]
INDEPENDENTS = 8
TOTAL_EDGES = 613
CONFERENCE_DEGREE = 7


def build(seed):
    rng = random.Random(seed)
    label = []
    for conf, size in enumerate(CONFERENCE_SIZES):
        label += [conf] * size
    label += [len(CONFERENCE_SIZES)] * INDEPENDENTS
    n = len(label)

    edges = set()
    start = 0
    for size in CONFERENCE_SIZES:
        members = list(range(start, start + size))
        start += size
        pairs = list(itertools.combinations(members, 2))
        rng.shuffle(pairs)
        want = size * min(CONFERENCE_DEGREE, size - 1) // 2
        # Keep pairs greedily while both ends still need conference games.
        deg = {v: 0 for v in members}
        kept = 0
        for a, b in pairs:
            if kept >= want:
                break
            if deg[a] < CONFERENCE_DEGREE and deg[b] < CONFERENCE_DEGREE:
                edges.add((a, b))
                deg[a] += 1
                deg[b] += 1
                kept += 1

    cross = [(a, b) for a, b in itertools.combinations(range(n), 2)
             if label[a] != label[b] or label[a] == len(CONFERENCE_SIZES)]
    rng.shuffle(cross)
    games = [0] * n
    for a, b in edges:
        games[a] += 1
        games[b] += 1
    # Fill the schedule preferring teams with fewer games so degrees stay even.
    cross.sort(key=lambda e: games[e[0]] + games[e[1]])
    for a, b in cross:
        if len(edges) >= TOTAL_EDGES:
            break
        if games[a] < 12 and games[b] < 12:
            edges.add((a, b))
            games[a] += 1
            games[b] += 1
    assert len(edges) == TOTAL_EDGES, len(edges)
    return label, sorted(edges)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "football")
    parser.add_argument("--seed", type=int, default=2002)
    args = parser.parse_args()
    label, edges = build(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "graph.edges", "w") as f:
        f.write("# football-like fixture: 115 teams, 613 games\n")
        for a, b in edges:
            f.write(f"{a} {b}\n")
    with open(args.out / "labels.csv", "w") as f:
        f.write("node,label\n")
        for v, c in enumerate(label):
            f.write(f"{v},{c}\n")


if __name__ == "__main__":
    main()
