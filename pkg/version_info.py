"""
Version information for the QLDPC mismatch toolkit
"""

VERSION = "1.1.0"
VERSION_INFO = {
    "major": 1,
    "minor": 1,
    "patch": 0,
    "release_type": "stable",
    "build_date": "2026-10-18",
    "codename": "Overestimate"
}

RELEASE_NOTES = {
    "1.1.0": {
        "date": "2026-10-18",
        "type": "minor",
        "highlights": [
            "Probe-count tradeoff sweep for the naive and improved decoders",
            "Quadratic fit of BLER against the overestimate ratio",
            "Logical failures reported as a separate CSV column",
            "Deterministic results at any worker-thread count"
        ],
        "breaking_changes": False,
        "upgrade_required": False
    },
    "1.0.0": {
        "date": "2026-09-01",
        "type": "major",
        "highlights": [
            "Sum-product decoders for the BSC and the depolarizing channel",
            "Bicycle and PEG code construction with alist storage",
            "Quantum Fisher information tables for unentangled and Bell probes",
            "Classical and quantum channel-mismatch sweeps"
        ],
        "breaking_changes": False,
        "upgrade_required": False
    }
}

def get_version():
    """Get current version string"""
    return VERSION

def get_version_info():
    """Get detailed version information"""
    return VERSION_INFO

def get_release_highlights(version=None):
    """Get release highlights for a specific version"""
    if version is None:
        version = VERSION
    return RELEASE_NOTES.get(version, {}).get("highlights", [])
