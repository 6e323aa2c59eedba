import { StudioApp } from "./app.js";

// Same-origin by default; point elsewhere with ?service=http://host:port
const params = new URLSearchParams(window.location.search);
new StudioApp(params.get("service") ?? "");
