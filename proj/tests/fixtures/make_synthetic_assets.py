"""Writes synthetic_assets.csv: an invented asset list shaped like an
ecosystem export. Not real data; used only to exercise ingestion and fits."""
import csv
import random

rng = random.Random(7)
orgs = ["Northwind Labs", "Brightwater AI", "Lotus Compute", "OpenAI", "Mistral AI", "Alibaba",
        "Unmapped Collective"]
modalities = ["text", "text; image", "image", "speech", "text", "code", "protein sequences"]
accesses = ["open", "closed", "limited", "open", "open", "restricted"]

rows = []
for year in range(2018, 2026):
    n = int(2 * 1.8 ** (year - 2018))
    for i in range(n):
        month = rng.randint(1, 12 if year < 2025 else 1)
        size = rng.choice(["7B parameters", "13B", "70B parameters", "175B", "350M", "1.3B", "unknown"])
        rows.append([f"model-{year}-{i}", "model", rng.choice(orgs), f"{year}-{month:02d}",
                     rng.choice(accesses), size, rng.choice(modalities)])
    for i in range(max(1, n // 3)):
        month = rng.randint(1, 12 if year < 2025 else 1)
        rows.append([f"data-{year}-{i}", "dataset", rng.choice(orgs), f"{year}-{month:02d}", "open",
                     "1TB", "text"])

rows += [
    ["year-only-set", "dataset", "Northwind Labs", "2019", "open", "", "text"],
    ["undated-model", "model", "OpenAI", "sometime", "closed", "10B", "text"],
    ["future-model", "model", "OpenAI", "2150-01", "closed", "10B", "text"],
    ["mystery-access", "model", "Lotus Compute", "2021-06", "by request", "3B", "vision"],
    ["chat-app", "application", "OpenAI", "2022-11", "closed", "", "text"],
    ["joint-model", "model", "Brightwater AI, Lotus Compute", "2023-03", "open", "40B", "text, image"],
]

with open("synthetic_assets.csv", "w", newline="") as f:
    w = csv.writer(f)
    w.writerow(["name", "type", "organization", "created_date", "access", "size", "modality", "url"])
    for r in rows:
        w.writerow(r + ["https://example.invalid/" + r[0]])
