// Browser entry point: wire the app to the real fetch.

import { initApp } from "./app.js";

initApp(document, { fetchImpl: (input, init) => fetch(input, init) });
