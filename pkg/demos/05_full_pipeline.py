"""End-to-end pipeline over the bundled fixtures, via the CLI entry point.

Run from the repository root:

    python demos/05_full_pipeline.py
"""

import json
import tempfile
from pathlib import Path

from triway.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

with tempfile.TemporaryDirectory() as tmp:
    work = Path(tmp)
    features = work / "features.csv"
    model = work / "model.json"
    report = work / "report.json"

    main([
        "extract",
        "--annotations", str(FIXTURES / "tweets20.jsonl"),
        "--embeddings", str(FIXTURES / "toy_embeddings_10d.txt"),
        "--dim", "10", "--vocab-size", "8",
        "--features", str(features),
    ])
    print()
    main([
        "train",
        "--features", str(features),
        "--model", str(model),
        "--step", "0.25",
    ])
    print()
    main([
        "evaluate",
        "--features", str(features),
        "--model", str(model),
        "--pawlak", "--json", "--report", str(report),
    ])

    payload = json.loads(report.read_text())
    gtrs, pawlak = payload["gtrs"], payload["pawlak"]
    print("\nsummary:")
    print(f"  Pawlak (1, 0): accuracy {pawlak['accuracy']:.2%} at "
          f"coverage {pawlak['coverage']:.2%} "
          f"(modified {pawlak['modified_accuracy']:.2%})")
    print(f"  learned ({gtrs['alpha']}, {gtrs['beta']}): accuracy "
          f"{gtrs['accuracy']:.2%} at coverage {gtrs['coverage']:.2%} "
          f"(modified {gtrs['modified_accuracy']:.2%})")
