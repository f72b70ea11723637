package com.omni.fixture;

import android.view.View;

public class ClickHandler implements View.OnClickListener {

    @Override
    public void onClick(View v) {
        v.setEnabled(false);
    }
}
