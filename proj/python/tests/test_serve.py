import json
import signal
import socket
import subprocess
import time
import urllib.request


def free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def post(port, payload):
    req = urllib.request.Request(
        f"http://127.0.0.1:{port}/api",
        data=json.dumps(payload).encode(),
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(req, timeout=5) as resp:
        return json.loads(resp.read())


def test_http_serve_and_interrupt(cli_binary, tmp_path):
    (tmp_path / "index.html").write_text("<p>lab</p>")
    port = free_port()
    proc = subprocess.Popen(
        [cli_binary, "serve", "--port", str(port), "--root", str(tmp_path)],
        stderr=subprocess.PIPE,
    )
    try:
        deadline = time.time() + 10
        while True:
            try:
                opened = post(port, {"v": 1, "op": "open", "text": "{ (λx. x) y }", "id": 7})
                break
            except OSError:
                if time.time() > deadline or proc.poll() is not None:
                    raise
                time.sleep(0.05)
        assert opened["ok"] and opened["id"] == 7
        sid = opened["result"]["sessionId"]
        outline = post(port, {"v": 1, "op": "outline", "sessionId": sid})
        assert [e["id"] for e in outline["result"]["outline"]] == ["#1"]
        assert post(port, {"v": 1, "op": "nope"})["warning"]["code"] == "unknown_op"

        with urllib.request.urlopen(f"http://127.0.0.1:{port}/index.html", timeout=5) as resp:
            assert resp.read() == b"<p>lab</p>"
    finally:
        proc.send_signal(signal.SIGINT)
        assert proc.wait(timeout=10) == 0


def test_stdio_serve(cli_binary):
    requests = [
        {"v": 1, "op": "open", "text": "K := { λx. λy. x }"},
        {"v": 1, "op": "outline", "sessionId": "s1"},
        {"v": 1, "op": "close", "sessionId": "s1"},
    ]
    proc = subprocess.run(
        [cli_binary, "serve", "--stdio"],
        input="\n".join(json.dumps(r) for r in requests) + "\n",
        capture_output=True, text=True, timeout=10,
    )
    assert proc.returncode == 0
    responses = [json.loads(line) for line in proc.stdout.splitlines()]
    assert [r["ok"] for r in responses] == [True, True, True]
    assert responses[1]["result"]["outline"][0]["id"] == "K"
