import os
from dotenv import load_dotenv

load_dotenv(".env")

currently_dir = os.path.dirname(os.path.abspath(__file__))
artifacts_dir = os.path.join(os.path.dirname(currently_dir), "artifacts")

if not os.path.exists(artifacts_dir):
    os.makedirs(artifacts_dir)


the_seed = int(os.getenv("CURVSTRUCT_SEED", "0"))
the_tolerance = float(os.getenv("CURVSTRUCT_TOLERANCE", "1e-9"))
the_sample_count = int(os.getenv("CURVSTRUCT_SAMPLES", "12"))
the_numeric_only = os.getenv("CURVSTRUCT_NUMERIC_ONLY", "0") not in ("", "0", "false", "False")


def set_seed(seed):
    """Set the seed of the randomized zero test."""
    global the_seed
    the_seed = int(seed)


def get_seed():
    global the_seed
    return the_seed


def set_tolerance(tolerance):
    """Set the relative tolerance used by numeric zero verdicts."""
    global the_tolerance
    the_tolerance = float(tolerance)


def get_tolerance():
    global the_tolerance
    return the_tolerance


def get_sample_count():
    global the_sample_count
    return the_sample_count


def activate_numeric_only():
    global the_numeric_only
    the_numeric_only = True


def deactivate_numeric_only():
    global the_numeric_only
    the_numeric_only = False


def is_numeric_only_active():
    global the_numeric_only
    return the_numeric_only


def report_path(name):
    """Get the artifacts path of a saved report."""
    return os.path.join(artifacts_dir, f"{name}.report")


def save_report(name, text):
    """Save a rendered report under the artifacts directory."""
    with open(report_path(name), "w", encoding="utf-8") as f:
        f.write(text)
    return report_path(name)


def load_report(name):
    """Load a saved report, or None when it does not exist."""
    if not os.path.exists(report_path(name)):
        return None
    with open(report_path(name), "r", encoding="utf-8") as f:
        return f.read()
