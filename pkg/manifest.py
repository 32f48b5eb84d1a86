"""Run provenance: effective parameters, seeds, variants and content hashes of outputs"""
import hashlib
import logging
import os
import platform
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from reporting.tables import dumps_json, write_json

logger = logging.getLogger(__name__)

TOOL_NAME = 'sq-toolkit'
TOOL_VERSION = '1.0.0'


def file_sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for block in iter(lambda: f.read(1 << 16), b''):
            digest.update(block)
    return digest.hexdigest()


@dataclass
class RunManifest:
    """Everything needed to rerun a command; `metadata` is the only part left out of the hash"""

    command: List[str]
    parameters: Dict[str, object] = field(default_factory=dict)
    seeds: Dict[str, int] = field(default_factory=dict)
    variants: Dict[str, str] = field(default_factory=dict)
    results: Dict[str, object] = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)
    root: Optional[str] = None
    metadata: Dict[str, object] = field(default_factory=dict)

    def add_output(self, path: str) -> str:
        """Record the content hash of a written file, keyed by its path relative to root"""
        key = os.path.relpath(path, self.root) if self.root else os.path.basename(path)
        key = key.replace(os.sep, '/')
        self.outputs[key] = file_sha256(path)
        return key

    def hashed_content(self) -> Dict[str, object]:
        return {
            'tool': {'name': TOOL_NAME, 'version': TOOL_VERSION},
            'command': list(self.command),
            'parameters': self.parameters,
            'seeds': self.seeds,
            'variants': self.variants,
            'results': self.results,
            'outputs': dict(sorted(self.outputs.items())),
        }

    def manifest_hash(self) -> str:
        return hashlib.sha256(dumps_json(self.hashed_content()).encode('utf-8')).hexdigest()

    def to_dict(self) -> Dict[str, object]:
        record = self.hashed_content()
        record['manifest_hash'] = self.manifest_hash()
        record['metadata'] = self.metadata
        return record

    def write(self, path: str) -> str:
        self.metadata.setdefault('created_unix', round(time.time(), 3))
        self.metadata.setdefault('python', platform.python_version())
        write_json(path, self.to_dict())
        logger.info(f"Wrote run manifest to {path} ({len(self.outputs)} outputs)")
        return path


def manifest_path_for(output_path: str) -> str:
    return os.path.splitext(output_path)[0] + '.manifest.json'
