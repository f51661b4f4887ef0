"""
run(argv) executes one management command in-process and returns its exit
code, so `run(['artin-hasse', '--p', '3', '1-pi'])` behaves like
`manage.py artin_hasse --p 3 1-pi`.
"""

import os
from typing import Sequence

ALIASES = {'artin-hasse': 'artin_hasse'}


def run(argv: Sequence[str]) -> int:
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'reciprocity.settings')
    from django.core.management import ManagementUtility

    argv = list(argv)
    if argv:
        argv[0] = ALIASES.get(argv[0], argv[0])
    try:
        ManagementUtility(['manage.py'] + argv).execute()
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    return 0
