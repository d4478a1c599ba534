"""Validate kummerlab reports against the bundled schema."""
import json
import sys

import jsonschema


def main() -> int:
    schema = json.load(open(sys.argv[1]))
    for path in sys.argv[2:]:
        jsonschema.validate(json.load(open(path)), schema)
        print(f"{path}: valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
