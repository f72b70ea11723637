package com.mini.app;

import android.app.Activity;
import android.view.View;

public class B extends Activity {

    public void decorate() {
        View label = findViewById(R.id.label2);
        label.setEnabled(false);
    }
}
