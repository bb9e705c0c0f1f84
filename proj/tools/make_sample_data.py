#!/usr/bin/env python3
"""Writes the synthetic sample dataset under data/sample/.

population.csv holds one aggregate row per champion; the player directory
holds a 100-game history with the role mix Middle 42, Top 19, Utility 15,
Bottom 14, Jungle 10 and a mastery table.
"""
import argparse
import csv
import pathlib

import numpy as np

FEATURES = [
    "damagePerMinute", "goldPerMinute", "cs_per_min", "laneMinionsFirst10Minutes",
    "deaths_per_min", "killParticipation", "damageDealtToBuildings",
    "damageDealtToObjectives", "visionScorePerMinute", "totalTimeCCDealt",
    "totalDamageTaken", "damageSelfMitigated",
]
BASE = np.array([600, 380, 5.5, 45, 0.18, 0.5, 2500, 6000, 0.9, 300, 25000, 18000], dtype=float)

STYLES = {
    "tank":     [0.7, 0.9, 0.8, 0.9, 0.9, 0.6, 1.2, 0.8, 0.8, 1.8, 1.9, 2.0],
    "support":  [0.5, 0.6, 0.2, 0.2, 1.0, 1.3, 0.3, 0.3, 2.8, 1.6, 0.7, 0.5],
    "mage":     [1.5, 1.0, 1.0, 1.1, 1.1, 1.0, 0.8, 0.6, 0.9, 0.8, 0.6, 0.5],
    "marksman": [1.3, 1.3, 1.4, 1.4, 1.0, 0.9, 1.4, 1.1, 0.7, 0.3, 0.7, 0.6],
    "bruiser":  [1.0, 1.1, 1.1, 1.0, 1.0, 0.7, 2.2, 1.0, 0.6, 0.5, 1.1, 1.0],
    "jungle":   [1.1, 1.0, 0.8, 0.5, 1.1, 1.2, 0.6, 2.4, 1.0, 0.9, 1.2, 1.1],
}

CHAMPIONS = {
    "tank": ["Malphite", "Ornn", "Cho'Gath", "Sion", "Maokai", "Sejuani", "Zac", "Leona", "Nautilus"],
    "support": ["Lulu", "Janna", "Nami", "Soraka", "Karma", "Milio", "Thresh", "Bard"],
    "mage": ["Heimerdinger", "Xerath", "Anivia", "Annie", "Hwei", "Syndra", "Orianna", "Viktor",
             "Lux", "Ahri", "Vex", "Veigar"],
    "marksman": ["Jinx", "Caitlyn", "Ezreal", "Ashe", "Miss Fortune", "Kai'Sa", "Jhin", "Varus"],
    "bruiser": ["Nasus", "Mordekaiser", "Darius", "Garen", "Fiora", "Jax", "Renekton", "Illaoi"],
    "jungle": ["Lee Sin", "Vi", "Amumu", "Warwick", "Kha'Zix", "Graves", "Hecarim", "Nocturne"],
}

ROLE_POOL = {
    "MIDDLE": ["Heimerdinger", "Xerath", "Anivia", "Annie", "Hwei", "Syndra", "Viktor", "Malphite"],
    "TOP": ["Malphite", "Ornn", "Nasus", "Cho'Gath", "Mordekaiser", "Sion"],
    "UTILITY": ["Lulu", "Janna", "Xerath", "Leona", "Karma"],
    "BOTTOM": ["Jinx", "Ezreal", "Ashe", "Caitlyn"],
    "JUNGLE": ["Amumu", "Warwick", "Sejuani", "Vi"],
}
ROLE_MIX = {"MIDDLE": 42, "TOP": 19, "UTILITY": 15, "BOTTOM": 14, "JUNGLE": 10}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "sample"))
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    profile = {}
    for style, names in CHAMPIONS.items():
        for name in names:
            profile[name] = BASE * np.array(STYLES[style]) * rng.lognormal(0.0, 0.15, len(BASE))

    with open(out / "population.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["championName"] + FEATURES)
        for name in sorted(profile):
            w.writerow([name] + [f"{v:.4f}" for v in profile[name]])

    player = out / "DivineRaccoon_NA1"
    player.mkdir(exist_ok=True)
    roles = [r for r, n in ROLE_MIX.items() for _ in range(n)]
    rng.shuffle(roles)
    counts = {}
    with open(player / "history.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["game_order", "championName", "teamPosition", "win"] + FEATURES)
        for t, role in enumerate(roles, start=1):
            pool = ROLE_POOL[role]
            pref = 1.0 / np.arange(1, len(pool) + 1)
            champ = pool[rng.choice(len(pool), p=pref / pref.sum())]
            counts[champ] = counts.get(champ, 0) + 1
            row = profile[champ] * rng.lognormal(0.0, 0.2, len(BASE))
            win = bool(rng.random() < 0.52)
            w.writerow([t, champ, role, "true" if win else "false"] + [f"{v:.4f}" for v in row])

    with open(player / "mastery.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["championName", "championPoints", "championLevel"])
        for champ, n in sorted(counts.items(), key=lambda kv: -kv[1]):
            points = int(n * 3000 * rng.lognormal(0.0, 0.4))
            w.writerow([champ, points, min(7, 1 + points // 12000)])
        # Mastery on champions absent from the recorded history.
        for champ in ["Orianna", "Lux", "Garen"]:
            points = int(rng.integers(5000, 60000))
            w.writerow([champ, points, min(7, 1 + points // 12000)])


if __name__ == "__main__":
    main()
