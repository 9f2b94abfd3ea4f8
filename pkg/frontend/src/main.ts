import { ApiClient } from "./api";
import { mountApp } from "./app";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

// same-origin by default; override with <meta name="api-base" content="...">
const meta = document.querySelector('meta[name="api-base"]');
const base = meta?.getAttribute("content") ?? "";
mountApp(root, new ApiClient(base));
