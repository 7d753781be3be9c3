"""Lines printed by the acceptance tests, echoed in the terminal summary."""

LINES: list[str] = []
