"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

A small JSON-over-HTTP client shared by the remote oracle and the remote
encoder. It performs single requests only; retrying is left to the caller,
which knows whether a response is usable.
"""

import logging
import os
import threading
import time
from typing import Any, Callable, Dict, Optional

import requests

from .types.exceptions import TransportException, ConfigException

logger = logging.getLogger(__name__)

REDACTED = "<redacted>"


class JsonHttpClient:
    """
    Posts JSON payloads to an OpenAI-compatible API. At most ``max_in_flight``
    requests run concurrently; further callers block until a slot frees up.
    """

    def __init__(
        self,
        base_url: str,
        api_key_env: str,
        timeout_s: float = 30.0,
        max_in_flight: int = 4,
        session: Optional[requests.Session] = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.api_key_env = api_key_env
        self.timeout_s = timeout_s
        self.session = session if session is not None else requests.Session()
        self._slots = threading.BoundedSemaphore(max_in_flight)

    def _headers(self) -> Dict[str, str]:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.api_key_env, "") if self.api_key_env else ""
        if key:
            headers["Authorization"] = "Bearer " + key
        return headers

    @staticmethod
    def redact(headers: Dict[str, str]) -> Dict[str, str]:
        return {
            k: (REDACTED if k.lower() == "authorization" else v)
            for k, v in headers.items()
        }

    def post(self, path: str, payload: Dict[str, Any]) -> Dict[str, Any]:
        url = "{}/{}".format(self.base_url, path.lstrip("/"))
        headers = self._headers()
        logger.debug("POST %s headers=%s", url, self.redact(headers))
        with self._slots:
            try:
                resp = self.session.post(
                    url, json=payload, headers=headers, timeout=self.timeout_s
                )
                resp.raise_for_status()
                return resp.json()
            except requests.HTTPError as ex:
                status = ex.response.status_code if ex.response is not None else "?"
                raise TransportException("HTTP status {}".format(status), url)
            except requests.RequestException as ex:
                raise TransportException(type(ex).__name__, url)
            except ValueError:
                raise TransportException("response body is not JSON", url)


def with_backoff(
    attempt: Callable[[], Any],
    retries: int,
    backoff_base_s: float,
    retry_on: tuple,
    sleep: Callable[[float], None] = time.sleep,
    what: str = "request",
):
    """
    Call ``attempt`` up to ``retries`` times, sleeping ``base * 2**i`` seconds
    between tries (1s, 2s, 4s for a base of one second). The last error is
    re-raised.
    """
    if retries < 1:
        raise ConfigException("must be >= 1", "oracle", "max_retries")
    for i in range(retries):
        try:
            return attempt()
        except retry_on as ex:
            if i == retries - 1:
                raise
            delay = backoff_base_s * (2**i)
            logger.warning(
                "%s failed (%s), retrying in %.1fs (%d/%d)",
                what,
                ex.plain_message() if hasattr(ex, "plain_message") else ex,
                delay,
                i + 1,
                retries,
            )
            sleep(delay)
