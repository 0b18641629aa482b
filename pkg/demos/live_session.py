#!/usr/bin/env python3
"""Drive the HTTP service end to end: create a session, chat with roles,
preview and apply a fix, undo it, export a report.

Starts its own server on a free port with a temp data directory:

    python demos/live_session.py
"""

import json
import tempfile
import threading
import time
import urllib.request
from importlib import resources

import uvicorn

from critiq.providers import DeterministicProvider
from critiq.service import create_app
from critiq.session import SessionStore

fixtures = resources.files("critiq") / "fixtures"


def call(method: str, url: str, payload: dict | None = None):
    data = json.dumps(payload).encode() if payload is not None else None
    req = urllib.request.Request(url, data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


def main():
    with tempfile.TemporaryDirectory() as data_dir:
        app = create_app(store=SessionStore(data_dir), provider=DeterministicProvider())
        config = uvicorn.Config(app, host="127.0.0.1", port=0, log_level="error")
        server = uvicorn.Server(config)
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        while not server.started:
            time.sleep(0.02)
        port = server.servers[0].sockets[0].getsockname()[1]
        base = f"http://127.0.0.1:{port}/v1"
        print(f"service up at {base}")

        created = call("POST", f"{base}/sessions", {
            "document": json.loads((fixtures / "course.json").read_text(encoding="utf-8")),
            "context": json.loads((fixtures / "course.context.json").read_text(encoding="utf-8")),
            "mode": "multi",
        })
        sid = created["sessionId"]
        agenda = created["agenda"]
        print(f"\nsession {sid}: score {agenda['overall_score']}/10, "
              f"{len(agenda['agenda_items'])} agenda items")
        for item in agenda["agenda_items"][:4]:
            print(f"  [{item['priority']}] {item['title']}")

        print("\n> @UX why doesn't this color work?")
        reply = call("POST", f"{base}/sessions/{sid}/chat",
                     {"text": "@UX why doesn't this color work?"})
        print(f"< {reply['author']}: {reply['text']}")

        print("\n> @Engineer anything costly to build?")
        reply = call("POST", f"{base}/sessions/{sid}/chat",
                     {"text": "@Engineer anything costly to build?"})
        print(f"< {reply['author']}: {reply['text']}")

        issue_id = next(iid for item in agenda["agenda_items"]
                        for iid in item["issue_ids"] if "CONTRAST" in iid)
        options = call("GET", f"{base}/sessions/{sid}/issues/{issue_id}/remediations")
        print(f"\nremediations for {issue_id}:")
        for option in options:
            print(f"  {option['patch']['label']:30s} compliance={option['compliance']}")

        patch_id = options[0]["patch"]["patchId"]
        before = call("GET", f"{base}/sessions/{sid}/document")
        call("POST", f"{base}/sessions/{sid}/patches/{patch_id}/preview")
        after_preview = call("GET", f"{base}/sessions/{sid}/document")
        print(f"\npreview mutated nothing: {before == after_preview}")

        call("POST", f"{base}/sessions/{sid}/patches/{patch_id}/apply")
        call("POST", f"{base}/sessions/{sid}/undo")
        after_undo = call("GET", f"{base}/sessions/{sid}/document")
        print(f"apply -> undo restored the document: {before == after_undo}")

        report = call("GET", f"{base}/sessions/{sid}/export?format=report")
        print(f"\nexported report: tool={report['tool']} mode={report['mode']} "
              f"issues={len(report['issues'])}")
        server.should_exit = True


if __name__ == "__main__":
    main()
