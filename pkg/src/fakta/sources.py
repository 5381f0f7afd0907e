"""Media-source reliability registry and external search providers.

The registry maps hostnames to one of four reliability classes and answers
suffix-aware lookups (news.example.com matches a record for example.com).
The shipped registry.csv is a small example fixture; real deployments point
at their own CSV.

Providers implement one capability: given query terms, a domain whitelist
and a result budget, return ranked (url, title, snippet/body) hits. Two
implementations ship: a deterministic local stub reading JSONL fixtures
keyed by query hash (used by every test) and a generic HTTP JSON adapter.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import re
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

from .errors import InvalidUrlError, ProviderError, RegistryFormatError
from .querygen import Query
from .retrieval import DocumentRecord, ScoredDocument

logger = logging.getLogger(__name__)

RELIABILITY_CLASSES = ("wikipedia", "high", "mixed", "low")
MEDIA_CLASSES = ("high", "mixed", "low")

_HOSTNAME_RE = re.compile(r"^[a-z0-9]([a-z0-9-]*[a-z0-9])?(\.[a-z0-9]([a-z0-9-]*[a-z0-9])?)+$")


@dataclass(frozen=True)
class SourceRecord:
    domain: str
    reliability: str


class SourceRegistry:
    """Immutable domain -> reliability table with suffix matching."""

    def __init__(self, records: dict[str, SourceRecord]):
        self._records = dict(records)

    def __len__(self) -> int:
        return len(self._records)

    def lookup(self, domain: str) -> SourceRecord | None:
        parts = domain.lower().split(".")
        for start in range(len(parts) - 1):
            candidate = ".".join(parts[start:])
            if candidate in self._records:
                return self._records[candidate]
        return None

    def domains_for(self, reliability: str) -> list[str]:
        return sorted(
            d for d, r in self._records.items() if r.reliability == reliability
        )


def load_registry(path: str | Path) -> SourceRegistry:
    """Read the registry CSV (header: domain,reliability). Duplicate domains
    keep the last row with a warning; unknown labels fail with the line
    number."""
    records: dict[str, SourceRecord] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise RegistryFormatError(f"{path}: empty registry file") from None
        if [h.strip().lower() for h in header[:2]] != ["domain", "reliability"]:
            raise RegistryFormatError(f"{path}:1: expected header 'domain,reliability'")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) < 2:
                raise RegistryFormatError(f"{path}:{lineno}: expected 2 columns")
            domain = row[0].strip().lower()
            reliability = row[1].strip().lower()
            if reliability not in RELIABILITY_CLASSES:
                raise RegistryFormatError(
                    f"{path}:{lineno}: unknown reliability {reliability!r} "
                    f"(expected one of {', '.join(RELIABILITY_CLASSES)})"
                )
            if domain in records:
                logger.warning("%s:%d: duplicate domain %s, last row wins", path, lineno, domain)
            records[domain] = SourceRecord(domain=domain, reliability=reliability)
    return SourceRegistry(records)


def domain_of(url: str) -> str:
    """Hostname of a URL or bare domain string; raises InvalidUrlError."""
    candidate = url.strip()
    parsed = urllib.parse.urlparse(candidate)
    host = parsed.netloc or (candidate.split("/", 1)[0] if "://" not in candidate else "")
    host = host.split("@")[-1].split(":")[0].lower()
    if not _HOSTNAME_RE.match(host):
        raise InvalidUrlError(f"cannot extract a hostname from {url!r}")
    return host


def classify_domain(registry: SourceRegistry, url: str) -> str | None:
    """Reliability class of a URL's domain, or None when unregistered."""
    record = registry.lookup(domain_of(url))
    return record.reliability if record else None


@dataclass(frozen=True)
class ProviderHit:
    url: str
    title: str
    snippet: str = ""
    body: str = ""

    @property
    def text(self) -> str:
        return self.body or self.snippet


class ExternalSearchProvider(Protocol):
    def search(
        self, terms: Sequence[str], domains: Sequence[str], k: int
    ) -> list[ProviderHit]: ...


def _domain_whitelisted(host: str, whitelist: Sequence[str]) -> bool:
    return any(host == d or host.endswith("." + d) for d in whitelist)


def query_fixture_name(terms: Sequence[str]) -> str:
    """Fixture file name for a query: first 16 hex chars of the SHA-1 of
    the space-joined terms."""
    digest = hashlib.sha1(" ".join(terms).encode("utf-8")).hexdigest()
    return f"{digest[:16]}.jsonl"


class StubSearchProvider:
    """Deterministic provider reading JSONL fixtures from a directory.

    Each fixture file is named by query_fixture_name(terms) and holds one
    JSON object per line: {"url": ..., "title": ..., "snippet"/"body": ...}.
    Hits are filtered to the whitelist and ranked in file order.
    """

    def __init__(self, fixtures_dir: str | Path):
        self.fixtures_dir = Path(fixtures_dir)

    def search(
        self, terms: Sequence[str], domains: Sequence[str], k: int
    ) -> list[ProviderHit]:
        path = self.fixtures_dir / query_fixture_name(terms)
        if not path.exists():
            return []
        hits = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                hit = ProviderHit(
                    url=obj["url"],
                    title=obj.get("title", ""),
                    snippet=obj.get("snippet", ""),
                    body=obj.get("body", ""),
                )
                try:
                    host = domain_of(hit.url)
                except InvalidUrlError:
                    continue
                if _domain_whitelisted(host, domains):
                    hits.append(hit)
                if len(hits) >= k:
                    break
        return hits


class HttpSearchProvider:
    """Generic JSON-over-HTTP adapter.

    Sends GET {base_url}?q=<terms>&domains=<csv>&k=<n> with the API key from
    the configured environment variable as a bearer token, and expects a
    JSON array of {url, title, snippet} objects.
    """

    def __init__(
        self,
        base_url: str,
        api_key_env: str = "FAKTA_SEARCH_KEY",
        timeout: float = 10.0,
    ):
        self.base_url = base_url
        self.api_key_env = api_key_env
        self.timeout = timeout

    def search(
        self, terms: Sequence[str], domains: Sequence[str], k: int
    ) -> list[ProviderHit]:
        params = urllib.parse.urlencode(
            {"q": " ".join(terms), "domains": ",".join(domains), "k": str(k)}
        )
        request = urllib.request.Request(f"{self.base_url}?{params}")
        api_key = os.environ.get(self.api_key_env, "")
        if api_key:
            request.add_header("Authorization", f"Bearer {api_key}")
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as resp:
                payload = json.loads(resp.read().decode("utf-8"))
        except (urllib.error.URLError, OSError, ValueError) as exc:
            raise ProviderError(f"search request failed: {exc}") from exc
        hits = []
        for obj in payload[:k]:
            hit = ProviderHit(
                url=obj.get("url", ""),
                title=obj.get("title", ""),
                snippet=obj.get("snippet", ""),
                body=obj.get("body", ""),
            )
            try:
                host = domain_of(hit.url)
            except InvalidUrlError:
                continue
            if _domain_whitelisted(host, domains):
                hits.append(hit)
        return hits


def external_search(
    provider: ExternalSearchProvider,
    registry: SourceRegistry,
    query: Query | Sequence[str],
    reliability: str,
    k: int,
) -> tuple[list[ScoredDocument], dict[str, DocumentRecord]]:
    """Search one reliability channel through a provider.

    Results become DocumentRecords (body = fetched text or snippet) with
    score_init = 1/provider_rank; hits whose domain does not classify into
    the requested class are dropped. Provider transport failures surface as
    ProviderError tagged with the channel.
    """
    if reliability not in RELIABILITY_CLASSES:
        raise ValueError(f"unknown reliability class {reliability!r}")
    terms = list(query.terms) if isinstance(query, Query) else list(query)
    whitelist = registry.domains_for(reliability)
    if not whitelist:
        raise ProviderError(
            f"no registered domains for class {reliability!r}", channel=reliability
        )
    try:
        provider_hits = provider.search(terms, whitelist, k)
    except ProviderError as exc:
        raise ProviderError(str(exc), channel=reliability) from exc
    except Exception as exc:  # provider bugs degrade to a channel failure
        raise ProviderError(
            f"provider raised {type(exc).__name__}: {exc}", channel=reliability
        ) from exc

    hits: list[ScoredDocument] = []
    records: dict[str, DocumentRecord] = {}
    for provider_rank, hit in enumerate(provider_hits[:k], start=1):
        try:
            host = domain_of(hit.url)
        except InvalidUrlError:
            continue
        if classify_domain(registry, hit.url) != reliability:
            continue
        if hit.url in records:
            continue
        body = hit.text or hit.title
        if not body:
            continue
        records[hit.url] = DocumentRecord(
            doc_id=hit.url, title=hit.title, body=body, source_domain=host
        )
        hits.append(
            ScoredDocument(
                doc_id=hit.url, score_init=1.0 / provider_rank, rank=len(hits)
            )
        )
    hits = [
        ScoredDocument(h.doc_id, h.score_init, rank)
        for rank, h in enumerate(hits, start=1)
    ]
    return hits, records
