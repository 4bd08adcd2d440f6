"""Reading back an output directory."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Dict, List


def directory_digest(out_dir: str | Path) -> str:
    """SHA-256 over every file name and its bytes, in sorted name order."""
    digest = hashlib.sha256()
    root = Path(out_dir)
    for path in sorted(item for item in root.rglob("*") if item.is_file()):
        digest.update(path.relative_to(root).as_posix().encode("utf-8"))
        digest.update(b"\0")
        digest.update(path.read_bytes())
        digest.update(b"\0")
    return digest.hexdigest()


def attack_files(out_dir: str | Path) -> List[Path]:
    return sorted(Path(out_dir).glob("attack-*.json"), key=lambda path: int(path.stem.split("-", 1)[1]))


def read_outputs(out_dir: str | Path) -> Dict[str, object]:
    """Parsed JSON documents plus the DOT text; missing files are left out."""
    root = Path(out_dir)
    loaded: Dict[str, object] = {}
    for name in ("graph", "public", "metrics", "policies"):
        path = root / f"{name}.json"
        if path.exists():
            loaded[name] = json.loads(path.read_text(encoding="utf-8"))
    dot = root / "public.dot"
    if dot.exists():
        loaded["dot"] = dot.read_text(encoding="utf-8")
    loaded["attacks"] = [json.loads(path.read_text(encoding="utf-8")) for path in attack_files(root)]
    return loaded
