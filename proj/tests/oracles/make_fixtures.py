#!/usr/bin/env python3
"""Writes the hand-set JSON/CSV fixtures used by the C++ suites.

The synthetic end-to-end experiment is also scored here by brute force (closed
form preimage of the hand-set model, direct forward pass, direct decision
tree); the printed numbers are frozen into tests/acceptance.cpp.

Run from the repository root:  python3 tests/oracles/make_fixtures.py
"""
import json
import math
import os

import numpy as np

ROOT = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def dump(path, obj):
    with open(os.path.join(ROOT, path), "w") as f:
        json.dump(obj, f, indent=1)
        f.write("\n")


def write_csv(path, header, rows):
    with open(os.path.join(ROOT, path), "w") as f:
        f.write(",".join(header) + "\n")
        for r in rows:
            f.write(",".join(repr(float(v)) if not isinstance(v, int) else str(v) for v in r) + "\n")


def layer(w, b, act):
    return {"weights": [[float(x) for x in row] for row in w], "bias": [float(x) for x in b], "activation": act}


def models():
    dump("models/identity.json", {"name": "identity", "input_dim": 1,
                                  "layers": [layer([[1.0]], [0.0], "linear")]})
    dump("models/identity_no_input_dim.json", {"layers": [layer([[1.0]], [0.0], "linear")]})
    dump("models/identity_sigmoid.json", {"name": "identity-sigmoid", "input_dim": 1,
                                          "layers": [layer([[1.0]], [0.0], "sigmoid")]})
    dump("models/identity_tanh.json", {"name": "identity-tanh", "input_dim": 1,
                                       "layers": [layer([[1.0]], [0.0], "tanh")]})
    dump("models/identity2.json", {"name": "identity-2d", "input_dim": 2,
                                   "layers": [layer(np.eye(2), [0.0, 0.0], "linear")]})
    write_csv("data/four_rows.csv", ["x1", "x2"], [[0.5, 0.5], [2, 0.5], [2, 2], [0.5, 2]])
    write_csv("data/four_rows_labelled.csv", ["x1", "x2", "label"],
              [[0.5, 0.5, 1], [2, 0.5, 0], [2, 2, 1], [0.5, 2, 0]])
    # Against four_rows.csv as validation: verdicts C, C, I, U; model correct 1, 0, 1, 0.
    write_csv("data/metrics_example.csv", ["x1", "x2", "label"],
              [[0.5, 0.5, 1], [0.4, 0.6, 1], [2, 2, 1], [2, 0.5, 0]])
    with open(os.path.join(ROOT, "data/empty.csv"), "w") as f:
        f.write("x1,x2\n")
    rng = np.random.default_rng(20230701)
    dims = [(12, 8), (8, 12), (1, 8)]
    acts = ["linear", "linear", "sigmoid"]
    dump("models/dense_8_12_8_1.json", {
        "name": "dense-8-12-8-1", "version": "1", "input_dim": 8,
        "layers": [layer(rng.normal(0, 0.4, d), rng.normal(0, 0.1, d[0]), a) for d, a in zip(dims, acts)]})
    dump("models/dim_mismatch.json", {"name": "bad", "input_dim": 3, "layers": [
        layer(np.ones((5, 3)), np.zeros(5), "relu"), layer(np.ones((1, 4)), np.zeros(1), "sigmoid")]})
    dump("models/unknown_activation.json", {"name": "bad", "input_dim": 1,
                                            "layers": [layer([[1.0]], [0.0], "softmax")]})
    dump("models/bias_mismatch.json", {"name": "bad", "input_dim": 2,
                                       "layers": [layer(np.ones((4, 2)), np.zeros(3), "linear")]})
    with open(os.path.join(ROOT, "models/malformed.json"), "w") as f:
        f.write('{"input_dim": 1, "layers": [ {"weights": [[1]], ')


# Synthetic end-to-end experiment -------------------------------------------
# Layer 1: linear, W1 = I, b1 = [-2, -2]. Layer 2: sigmoid, w2 = [1, 1], b2 = 0.
# In-distribution features ~ N(3.88, 0.15); all of them are labelled 1 and the
# model predicts 1. The out-of-distribution slice has x1 ~ U(5.5, 7.0) and label
# 0, while the model still predicts 1.
W1 = np.eye(2)
B1 = np.array([-2.0, -2.0])
W2 = np.array([[1.0, 1.0]])
B2 = np.array([0.0])
POST = (0.95, 0.99)


def synthetic():
    dump("synthetic/model.json", {"name": "synthetic-ood", "input_dim": 2,
                                  "layers": [layer(W1, B1, "linear"), layer(W2, B2, "sigmoid")]})
    rng = np.random.default_rng(7)

    def in_dist(n):
        return rng.normal(3.88, 0.15, size=(n, 2))

    validation = in_dist(300)
    unseen_in = in_dist(400)
    ood = np.column_stack([rng.uniform(5.5, 7.0, 100), rng.normal(3.88, 0.15, 100)])
    unseen = np.vstack([unseen_in, ood])
    labels = np.concatenate([np.ones(400, dtype=int), np.zeros(100, dtype=int)])
    perm = rng.permutation(len(unseen))
    unseen, labels = unseen[perm], labels[perm]

    write_csv("synthetic/validation.csv", ["x1", "x2", "label"],
              [[*r, 1] for r in validation])
    write_csv("synthetic/unseen.csv", ["x1", "x2", "label"],
              [[*r, int(l)] for r, l in zip(unseen, labels)])
    return validation, unseen, labels


def brute_force(validation, unseen, labels):
    # Closed-form preimage: output in [n1, n2]  <=>  x1 + x2 - 4 in [logit n1, logit n2].
    # Pulled back through pinv([1, 1]) = [1/2, 1/2] and then W1 = I, b1 = -2.
    lg = [math.log(p / (1 - p)) for p in POST]
    lo = (lg[0] - B2[0]) / 2.0 + 2.0
    hi = (lg[1] - B2[0]) / 2.0 + 2.0

    def flags(x):
        return (x < lo) | (x > hi)

    counts = flags(validation).sum(axis=0)
    rate = counts.mean() / len(validation)

    outcomes = []
    for f in flags(unseen):
        L = int(sum(1 for v in f if v > rate))
        M = len(f) - L
        if L == 0:
            outcomes.append("Correct")
        elif L == M:
            outcomes.append("Uncertain")
        elif L < M:
            outcomes.append("Correct")
        else:
            outcomes.append("Incorrect")

    z = unseen @ W1.T + B1
    y = 1.0 / (1.0 + np.exp(-(z @ W2.T + B2)))
    predicted = (y[:, 0] >= 0.5).astype(int)
    model_correct = predicted == labels

    tp = sum(1 for o, c in zip(outcomes, model_correct) if o == "Correct" and c)
    fp = sum(1 for o, c in zip(outcomes, model_correct) if o == "Correct" and not c)
    fn = sum(1 for o, c in zip(outcomes, model_correct) if o != "Correct" and c)
    tn = sum(1 for o, c in zip(outcomes, model_correct) if o != "Correct" and not c)

    viol = flags(unseen).any(axis=1).astype(float)
    mis = (~model_correct).astype(float)
    pcc = float(np.corrcoef(viol, mis)[0, 1])

    print("box per feature: [%.17g, %.17g]" % (lo, hi))
    print("validation counts", counts.tolist(), "rate %.17g" % rate)
    print("verdicts correct=%d incorrect=%d uncertain=%d" % (
        outcomes.count("Correct"), outcomes.count("Incorrect"), outcomes.count("Uncertain")))
    print("violations=%d satisfactions=%d" % (flags(unseen).sum(), flags(unseen).size - flags(unseen).sum()))
    print("TP=%d FP=%d FN=%d TN=%d" % (tp, fp, fn, tn))
    print("recall=%.17g precision=%.17g" % (tp / (tp + fn), tp / (tp + fp) if tp + fp else float("nan")))
    print("pcc=%.17g" % pcc)


if __name__ == "__main__":
    models()
    brute_force(*synthetic())
