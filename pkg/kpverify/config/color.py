class Colors:
    BLUE = "\033[94m"
    BOLD = "\033[1m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    END = "\033[0m"

    @classmethod
    def status(cls, status: str) -> str:
        """Colour a check status for terminal summaries."""
        colour = {"pass": cls.GREEN, "fail": cls.RED}.get(str(status), cls.YELLOW)
        return f"{colour}{status}{cls.END}"
