#!/usr/bin/env python3
# Copyright 2026 The xaiselect Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Copyright 2026 The xaiselect Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the sample datasets shipped in data/.

diabetes.csv is the raw (unscaled) Efron et al. diabetes table as shipped by
scikit-learn. pima_like.csv and sms_like.* are synthetic stand-ins with the
same shape as the Pima Indians and SMS Spam corpora, which cannot be
redistributed here.
"""
import csv
import random

import numpy as np
from sklearn.datasets import load_diabetes


def write_diabetes():
    ds = load_diabetes(scaled=False)
    names = list(ds.feature_names) + ["target"]
    with open("diabetes.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names)
        for row, y in zip(ds.data, ds.target):
            w.writerow([repr(float(v)) if not float(v).is_integer() else int(v) for v in row] + [int(y)])


def write_pima_like(n=768, seed=7):
    rng = np.random.default_rng(seed)
    preg = rng.poisson(3.8, n)
    glucose = np.clip(rng.normal(121, 32, n), 40, 199).round()
    bp = np.clip(rng.normal(69, 19, n), 0, 122).round()
    skin = np.clip(rng.normal(21, 16, n), 0, 99).round()
    insulin = np.clip(rng.gamma(1.2, 66, n), 0, 846).round()
    bmi = np.clip(rng.normal(32, 7.9, n), 0, 67).round(1)
    pedigree = np.clip(rng.gamma(2.0, 0.24, n), 0.078, 2.42).round(3)
    age = np.clip(21 + rng.gamma(1.6, 7.5, n), 21, 81).round()
    logit = (-8.4 + 0.12 * preg + 0.035 * glucose - 0.013 * bp + 0.0006 * skin
             - 0.0012 * insulin + 0.09 * bmi + 0.95 * pedigree + 0.015 * age)
    outcome = (rng.random(n) < 1 / (1 + np.exp(-logit))).astype(int)
    names = ["Pregnancies", "Glucose", "BloodPressure", "SkinThickness",
             "Insulin", "BMI", "DiabetesPedigreeFunction", "Age", "Outcome"]
    with open("pima_like.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names)
        for i in range(n):
            w.writerow([int(preg[i]), int(glucose[i]), int(bp[i]), int(skin[i]),
                        int(insulin[i]), bmi[i], pedigree[i], int(age[i]), outcome[i]])


SPAM = [
    "Unlimited texts. Limited minutes.",
    "WINNER!! You have been selected to receive a {p} prize reward! Call {num} now",
    "Free entry in 2 a wkly comp to win {p} cash. Text WIN to {num}",
    "URGENT! Your mobile number has won a {p} bonus. Claim code {code} call {num}",
    "Congratulations ur awarded {p} of vouchers. Text CLAIM to {num} to collect",
    "You have {n} new voicemail. Call {num} now to listen, only 10p per min",
    "Get the latest ringtones FREE! Reply TONE to {num}. Unsubscribe STOP",
    "Private! Your account statement shows {n} unredeemed bonus points. Call {num}",
    "Double your mins and txts on the {p} plan. Call {num} free today",
    "SIX chances to win CASH! From 100 to {p} pounds txt CSH11 to {num}",
]
HAM = [
    "Ok lar... joking with you, see you at {t}",
    "I'll be home by {t}, do you need anything from the shop?",
    "Sorry, I'll call later in the meeting",
    "Did you finish the {thing} yet? Let me know",
    "Going to the {place} with mum, back by {t}",
    "Haha that was so funny, tell {name} I said hi",
    "Can you pick me up from the {place} at {t}?",
    "Yeah I got the {thing}, thanks a lot",
    "Are we still on for dinner tonight? {name} is coming too",
    "Just woke up, what time is the {thing} tomorrow?",
    "Call me when you reach the {place}, I want to hear about {name}",
    "Unlimited love to you and {name}, see you at {t}",
]


def fill(template, rng):
    return template.format(
        p=rng.choice(["£1000", "£2000", "£500", "£250", "$900"]),
        num=str(rng.randint(80000, 89999)) + str(rng.randint(100, 999)),
        code=rng.choice(["KL341", "XX22", "BR9"]),
        n=rng.randint(1, 9),
        t=rng.choice(["5pm", "6", "half 7", "9ish", "noon"]),
        thing=rng.choice(["essay", "report", "laundry", "tickets", "shopping"]),
        place=rng.choice(["station", "gym", "library", "office", "mall"]),
        name=rng.choice(["Tom", "Jen", "Priya", "Sam", "Alex"]),
    )


def write_sms_like(n=400, seed=11):
    rng = random.Random(seed)
    docs, labels, preds = [], [], []
    for _ in range(n):
        spam = rng.random() < 0.15
        docs.append(fill(rng.choice(SPAM if spam else HAM), rng))
        labels.append(int(spam))
        # Stand-in classifier outputs: mostly right, with some errors of each kind.
        flip = rng.random() < (0.2 if spam else 0.04)
        preds.append(int(spam) ^ int(flip))
    with open("sms_like.txt", "w") as fh:
        fh.write("\n".join(docs) + "\n")
    for name, col, values in (("sms_like_labels.csv", "label", labels),
                              ("sms_like_predictions.csv", "prediction", preds)):
        with open(name, "w") as fh:
            fh.write(col + "\n" + "\n".join(map(str, values)) + "\n")


if __name__ == "__main__":
    write_diabetes()
    write_pima_like()
    write_sms_like()
