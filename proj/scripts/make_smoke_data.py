#!/usr/bin/env python3
"""Regenerates data/smoke/: the 40-record smoke set, a context-only synthetic
set, a small test file, and a synthetic GloVe table covering their vocabulary.

The GloVe vocabulary is whatever `sarcasm preprocess` emits for these files,
so run this after building the CLI:

    python3 scripts/make_smoke_data.py build/sarcasm
"""
import hashlib
import json
import random
import subprocess
import sys
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "smoke"
DIM = 25

S, N = "SARCASM", "NOT_SARCASM"

SMOKE = [
    (S, "Oh great, another Monday :)", ["my alarm did not go off", "missed the bus again"]),
    (S, "wow, sooo glad I waited 3 hours for this", ["the flight is delayed again", "no food at the gate"]),
    (S, "@user perfect timing as always #blessed", ["the wifi died during my exam", "lost all my work"]),
    (S, "Yeah because THAT worked so well last time", ["they want to try the same plan", "it failed badly before"]),
    (S, "love it when my phone dies at 1% ...", ["battery is terrible", "charger broke too"]),
    (S, "What a gr8 way to start the day", ["spilled coffee on my laptop", "then stepped in a puddle"]),
    (S, "thx so much for the help, really", ["nobody answered my emails", "the deadline passed"]),
    (S, "Best customer service EVER", ["on hold for two hours", "then the call dropped"]),
    (S, "I just LOVE traffic", ["stuck on the highway", "accident ahead, nothing moving"]),
    (S, "brilliant idea, truly genius", ["he deleted the production database", "no backups either"]),
    (S, "gud job team, nailed it", ["the launch crashed immediately", "users are furious"]),
    (S, "so happy to be working this weekend :)", ["boss cancelled my vacation", "again"]),
    (S, "Wonderful, more rain", ["the picnic is ruined", "everything is soaked"]),
    (S, "awesome, my favorite thing, paperwork", ["tax forms are due", "lost the receipts"]),
    (S, "clearly the smartest decision of the year", ["they raised prices and cut features", "customers left"]),
    (S, "goood to know my opinion matters", ["the meeting went ahead without me", "decision already made"]),
    (S, "fantastic, the printer jammed again", ["urgent report due in five minutes", "printer is broken"]),
    (S, "Nothing says fun like a 6am meeting", ["calendar invite from management", "mandatory attendance"]),
    (S, "perfect, just perfect", ["the cake fell on the floor", "guests arriving now"]),
    (S, "thanks for the reminder b4 it was too late... not", ["the reminder came after the deadline", "penalty applied"]),
    (N, "Great news, congratulations!", ["I got the job offer", "start next month"]),
    (N, "so glad you made it home safe :)", ["landed safely", "home with family now"]),
    (N, "what a beautiful sunset #nofilter", ["walking on the beach", "the sky is amazing"]),
    (N, "thank you so much for the gift", ["sent you a small present", "hope you like it"]),
    (N, "love this song", ["the band released a new album", "it sounds wonderful"]),
    (N, "happy birthday, have a great day", ["today is my birthday", "celebrating with friends"]),
    (N, "the new park looks amazing", ["city opened the new park", "lots of trees and flowers"]),
    (N, "I agree, it was a good game", ["our team won the final", "great match"]),
    (N, "congrats on the graduation!!", ["finally graduated today", "proud of my degree"]),
    (N, "looking forward to the trip", ["booked the tickets", "leaving on friday"]),
    (N, "this recipe is delicious, thx", ["try my lasagna recipe", "family favorite"]),
    (N, "glad the surgery went well", ["recovery is going great", "doctor is happy"]),
    (N, "welcome to the team", ["first day at the new office", "everyone is friendly"]),
    (N, "nice work on the presentation", ["the client loved our pitch", "deal signed"]),
    (N, "so proud of you", ["finished my first marathon", "personal best time"]),
    (N, "enjoy the holiday :)", ["vacation starts tomorrow", "going to the mountains"]),
    (N, "that puppy is adorable", ["adopted a puppy today", "meet our new friend"]),
    (N, "the concert was amazing last night", ["front row seats", "best show ever"]),
    (N, "good luck on the exam", ["studying all week", "exam tomorrow morning"]),
    (N, "thanks for sharing, very helpful", ["wrote a guide for beginners", "hope it helps"]),
]

SMOKE_TEST = [
    ("twitter_1", "oh wonderful, the train is late again", ["waiting on the platform", "cold and rainy"]),
    ("twitter_2", "congrats, well deserved", ["got promoted today", "so happy"]),
    ("twitter_3", "yeah, LOVE waiting in line", ["the queue is two hours long", "nothing moving"]),
    ("twitter_4", "enjoy the concert :)", ["got tickets for tonight", "front row"]),
    ("twitter_5", "perfect, my laptop crashed", ["unsaved work gone", "deadline tonight"]),
    ("twitter_6", "beautiful photo", ["sunrise over the lake", "peaceful morning"]),
]

AMBIGUOUS = ["oh great", "just wonderful", "love it", "perfect timing", "fantastic news",
             "awesome day", "what a surprise", "amazing really"]
GOOD_CTX = ["won the lottery today", "got a promotion at work", "the weather is sunny and warm",
            "my team won the championship", "passed the final exam", "family reunion was lovely",
            "new puppy at home", "vacation starts tomorrow"]
BAD_CTX = ["my car broke down again", "lost my wallet on the train", "the flight got cancelled",
           "my laptop crashed and lost everything", "stuck in traffic for hours",
           "the rain ruined the wedding", "failed the driving test again", "the power went out during dinner"]

POSITIVE = {"great", "happi", "love", "beauti", "amaz", "congratul", "congrat", "glad", "proud",
            "nice", "good", "enjoy", "delici", "adore", "adorabl", "wonder", "won", "win",
            "promot", "sunni", "warm", "lovely", "puppi", "vacat", "pass", "friendli", "smile",
            "best", "thank", "welcom", "safe", "celebr", "favorit", "fantast", "awesom", "perfect",
            "help", "luck", "peac", "deserv", "laugh", "love", "reunion"}
NEGATIVE = {"broke", "broken", "lost", "cancel", "crash", "stuck", "traffic", "rain", "ruin",
            "fail", "power", "delai", "delay", "die", "di", "terribl", "spill", "puddl", "furiou",
            "jam", "penalti", "miss", "nobodi", "accid", "late", "cold", "sad", "cri", "wait",
            "queue", "unsav", "gone", "hold", "drop", "soak", "mandatori", "delet", "backup"}


def write_jsonl(path, rows):
    with open(path, "w") as f:
        for row in rows:
            f.write(json.dumps(row) + "\n")


def word_vector(word):
    rng = random.Random(int(hashlib.sha256(word.encode()).hexdigest()[:16], 16))
    vec = [rng.gauss(0.0, 0.3) for _ in range(DIM)]
    if word in POSITIVE:
        vec[0] += 1.0
        vec[1] += 0.5
    if word in NEGATIVE:
        vec[0] -= 1.0
        vec[2] += 0.5
    return vec


def main():
    cli = sys.argv[1] if len(sys.argv) > 1 else "build/sarcasm"
    OUT.mkdir(parents=True, exist_ok=True)
    write_jsonl(OUT / "train.jsonl",
                [{"label": l, "response": r, "context": c} for l, r, c in SMOKE])
    write_jsonl(OUT / "test.jsonl",
                [{"id": i, "response": r, "context": c} for i, r, c in SMOKE_TEST])

    # Every response appears equally often in both classes, so only the
    # context separates them.
    synthetic = []
    for k in range(64):
        sarcastic = k % 2 == 0
        pool = BAD_CTX if sarcastic else GOOD_CTX
        synthetic.append({
            "label": S if sarcastic else N,
            "response": AMBIGUOUS[(k // 2) % len(AMBIGUOUS)],
            "context": [pool[(k // 2) % len(pool)]],
        })
    write_jsonl(OUT / "context_synthetic.jsonl", synthetic)

    vocab = set()
    for name, flag in [("train.jsonl", "--train-file"), ("test.jsonl", "--test-file"),
                       ("context_synthetic.jsonl", "--train-file")]:
        out = subprocess.run([cli, "preprocess", flag, str(OUT / name)],
                             check=True, capture_output=True, text=True).stdout
        for line in out.splitlines():
            row = json.loads(line)
            vocab.update(row["response"])
            for turn in row["context"]:
                vocab.update(turn)
    with open(OUT / "glove_smoke.txt", "w") as f:
        for word in sorted(vocab):
            f.write(word + " " + " ".join(f"{v:.6f}" for v in word_vector(word)) + "\n")
    print(f"{len(vocab)} words")


if __name__ == "__main__":
    main()
